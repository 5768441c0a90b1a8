extern int fchdir(int fd) ;
extern void cwd_advance_fd(struct FTS *sp, int fd) ;

static int restore_cwd(struct FTS *sp)
{
  int tmp___20 ;
  int tmp___21 ;
  int tmp___22 ;
  int tmp___23 ;
  tmp___23 = 0;
  if (! (sp->fts_options & 4)) {
    if (sp->fts_options & 512) {
      tmp___20 = -100;
      cwd_advance_fd(sp, tmp___20);
      tmp___23 = 1;
    } else {
      tmp___21 = sp->fts_rfd;
      tmp___22 = fchdir(tmp___21);
      tmp___23 = tmp___22;
    }
  }
  return (tmp___23);
}

int main(void)
{
  return (restore_cwd((struct FTS *)0));
}
