extern int getopt_long(int argc, char **argv, char const *shortopts, void const *longopts, int *ind) ;
extern char *optarg ;
extern int stat(char const *path, struct stat *buf) ;
extern void error(int status, int errnum, char const *fmt, ...) ;
extern int *__errno_location(void) ;
extern long get_stat_mtime(struct stat const *st) ;
extern int printf(char const *fmt, ...) ;

static int reference ;
static char const *refname ;

int main(int argc, char **argv)
{
  int optc ;
  int tmp___17 ;
  int *tmp___16 ;
  long when ;
  struct stat refstats ;
  when = 0L;
  while (1) {
    optc = getopt_long(argc, argv, "r:", (void const *)0, (int *)0);
    if (optc == -1) {
      goto opts_done;
    }
    if (optc == 114) {
      goto case_114;
    } else {
      goto switch_default;
    }
    case_114: ;
    reference = 1;
    refname = (char const *)optarg;
    goto switch_break;
    switch_default: ;
    goto switch_break;
    switch_break: ;
  }
  opts_done: ;
  if (reference) {
    tmp___17 = stat(refname, & refstats);
    if (tmp___17 != 0) {
      tmp___16 = __errno_location();
      error(1, *tmp___16, "cannot stat file");
    }
    when = get_stat_mtime((struct stat const *)(& refstats));
  }
  printf("%ld\n", when);
  return 0;
}
