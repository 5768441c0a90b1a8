extern void parallel_sort(struct line *lines) ;
extern void sequential_sort(struct line *lines) ;
extern void merge_loop(struct queue *queue) ;
extern int pthread_mutex_destroy(void *m) ;

static unsigned long nthreads ;
static unsigned long nhi ;
static unsigned long nlo ;

static void sortlines(struct line *lines, struct merge_node *node)
{
  if (nthreads > 1UL) {
    parallel_sort(lines);
  } else {
    nlo = node->nlo;
    if (1UL < nhi) {
      sequential_sort(lines - nlo);
      sequential_sort(lines);
    }
    merge_loop(node->queue);
  }
  pthread_mutex_destroy(& node->lock);
}

int main(void)
{
  sortlines((struct line *)0, (struct merge_node *)0);
  return 0;
}
