static void make_maps(struct EState *s)
{
  int i ;
  i = 0;
  s->nInUse = 0;
  while (1) {
    while_continue: ;
    if (! (i < 256)) {
      goto while_break;
    }
    if (s->inUse[i]) {
      s->seqToUnseq[s->nInUse] = (unsigned char)i;
      (s->nInUse) ++;
    }
    i ++;
  }
  while_break: ;
  return;
}

int main(void)
{
  make_maps((struct EState *)0);
  return 0;
}
