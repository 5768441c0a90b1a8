extern void advance_tree(struct FTS *sp, struct FTSENT *p) ;

static struct FTSENT *fts_read(struct FTS *sp)
{
  struct FTSENT *p ;
  p = sp->fts_cur;
  advance_tree(sp, p);
  return (p);
}

int main(void)
{
  fts_read((struct FTS *)0);
  return 0;
}
