extern unsigned long strtoul(char const *s, char **endptr, int base) ;

static unsigned long xstrtoul(char const *s, int strtol_base)
{
  char *t_ptr ;
  char **p ;
  unsigned long tmp ;
  char const *q ;
  q = s;
  tmp = strtoul(q, p, strtol_base);
  return (tmp);
}

int main(int argc, char **argv)
{
  unsigned long m ;
  m = xstrtoul((char const *)*(argv + 1), 8);
  return ((int)m);
}
