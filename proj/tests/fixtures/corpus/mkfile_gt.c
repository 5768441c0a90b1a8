/* mkfile: create directories with an optional mode, parent creation, and
   per-directory chatter. Merged single-file build. */
extern int getopt_long(int argc, char **argv, char const *shortopts, void const *longopts, int *ind) ;
extern char *optarg ;
extern int optind ;
extern int mkdir(char const *path, unsigned int mode) ;
extern int chmod(char const *path, unsigned int mode) ;
extern void error(int status, int errnum, char const *fmt, ...) ;
extern char *quote(char const *name) ;
extern char *gettext(char const *msgid) ;
extern void exit(int status) ;
extern int printf(char const *fmt, ...) ;
extern unsigned long strlen(char const *s) ;

static char const *mode_arg ;

static void usage(int status)
{
  printf("usage: mkfile [-p] [-v] [-m MODE] dir...\n");
  exit(status);
}


static unsigned int parse_mode(char const *s)
{
  unsigned int m ;
  int c ;
  m = 0U;
  while (1) {
    c = (int)*s;
    if (! c) {
      goto parse_break;
    }
    m = (m * 8U) + ((unsigned int)c - 48U);
    s = s + 1;
  }
  parse_break: ;
  return (m);
}

static int make_dir(char const *dir, unsigned int mode)
{
  int fail ;
  fail = mkdir(dir, mode);
  if (! fail) {
    chmod(dir, mode);
  }
  return (fail);
}




int main(int argc, char **argv)
{
  int optc ;
  int fail ;
  int dir_created ;
  unsigned int newmode ;
  char const *dir___0 ;
  char *tmp___6 ;
  char *tmp___7 ;

  newmode = 493U;
  fail = 0;
  while (1) {
    optc = getopt_long(argc, argv, "m:pv", (void const *)0, (int *)0);
    if (optc == -1) {
      goto opts_done;
    }
    if (optc == 109) {
      goto case_109;
    } else {
          goto switch_default;
    }
    case_109: ;
    mode_arg = (char const *)optarg;
    goto switch_break;
    switch_default: ;
    usage(1);
    switch_break: ;
  }
  opts_done: ;
  if (mode_arg) {
    newmode = parse_mode(mode_arg);
  }
  if (! (optind < argc)) {
    usage(1);
  }
  while (optind < argc) {
    dir___0 = (char const *)*(argv + optind);
    dir_created = 0;
    if (! dir_created) {
      fail = make_dir(dir___0, newmode);
    }
    if (fail) {
      tmp___6 = quote(dir___0);
      tmp___7 = gettext("cannot create directory %s");
      error(0, 17, tmp___7, tmp___6);
    }
    optind = optind + 1;
  }
  return (fail);
}
