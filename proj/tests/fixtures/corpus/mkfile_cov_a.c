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

static int create_parents ;
static int verbose ;
static char const *mode_arg ;
static char path_buf[1024] ;

static void usage(int status)
{
  printf("usage: mkfile [-p] [-v] [-m MODE] dir...\n");
  exit(status);
}

static void announce(char const *dir)
{
  char *tmp ;
  tmp = gettext("created directory %s\n");
  printf(tmp, dir);
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
  if (verbose) {
  }
  return (fail);
}

static int copy_prefix(char const *dir, unsigned long end)
{
  unsigned long i ;
  unsigned long out ;
  int last_slash ;
  i = 0UL;
  out = 0UL;
  last_slash = 0;
  while (1) {
    if (! (i < end)) {
      goto copy_break;
    }
    if (out >= 1023UL) {
      goto copy_break;
    }
    if ((int)*(dir + i) == 47) {
      if (last_slash) {
        i = i + 1UL;
        goto copy_cont;
      }
      last_slash = 1;
    } else {
      last_slash = 0;
    }
    path_buf[out] = (char)*(dir + i);
    out = out + 1UL;
    i = i + 1UL;
    copy_cont: ;
  }
  copy_break: ;
  path_buf[out] = (char)0;
  return ((int)out);
}

static int parent_ready(char const *pfx)
{
  int tmp___0 ;
  if (! *pfx) {
    return (1);
  }
  tmp___0 = chmod(pfx, 448U);
  if (tmp___0 == 0) {
    return (1);
  }
  return (0);
}

static int make_path(char const *dir, unsigned int mode)
{
  int fail ;
  int partial ;
  int ready ;
  unsigned long len ;
  unsigned long i ;
  fail = 0;
  len = strlen(dir);
  if (len == 0UL) {
    return (1);
  }
  i = 1UL;
  while (1) {
    if (! (i < len)) {
      goto path_break;
    }
    if ((int)*(dir + i) == 47) {
      partial = copy_prefix(dir, i);
      if (partial > 0) {
        ready = parent_ready((char const *)(path_buf));
        if (! ready) {
          fail = mkdir((char const *)(path_buf), 448U);
        }
        if (verbose) {
          announce((char const *)(path_buf));
        }
      }
    }
    i = i + 1UL;
  }
  path_break: ;
  if (! fail) {
    fail = make_dir(dir, mode);
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
      if (optc == 112) {
        goto case_112;
      } else {
        if (optc == 118) {
          goto case_118;
        } else {
          goto switch_default;
        }
      }
    }
    case_109: ;
    mode_arg = (char const *)optarg;
    goto switch_break;
    case_112: ;
    create_parents = 1;
    goto switch_break;
    case_118: ;
    verbose = 1;
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
    if (create_parents) {
      dir_created = 1;
    }
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
