extern int mkdir(char const *path, unsigned int mode) ;
extern void error(int status, int errnum, char const *fmt, ...) ;
extern char *quote(char const *name) ;
extern char *gettext(char const *msgid) ;

static int create_parents ;
static int dir_created ;

static int make_dir(char const *dir, unsigned int mode)
{
  int tmp ;
  tmp = mkdir(dir, mode);
  return (tmp == 0);
}

int main(int argc, char **argv)
{
  int fail ;
  char const *dir___0 ;
  char *tmp___6 ;
  char *tmp___7 ;
  dir___0 = (char const *)*(argv + 1);
  fail = make_dir(dir___0, 493U);
  if (! fail) {
    if (! create_parents) {
      if (! dir_created) {
      }
    }
  }
  return (! fail);
}
