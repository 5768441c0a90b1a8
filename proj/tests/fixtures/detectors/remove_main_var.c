extern int rm(char *const *file, struct rm_options const *x) ;
extern void rm_option_init(struct rm_options *x) ;

static int prompt_once ;

int main(int argc, char **argv)
{
  struct rm_options x ;
  char **file ;
  int tmp___8 ;
  file = argv + 1;
  tmp___8 = rm((char *const *)file, (struct rm_options const *)(& x));
  return (tmp___8);
}
