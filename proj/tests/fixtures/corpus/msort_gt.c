/* msort: merge sort lines of input, optionally with worker threads. */
extern void parallel_sort(struct line *lines) ;
extern void sequential_sort(struct line *lines) ;
extern void merge_loop(struct queue *queue) ;
extern int pthread_mutex_lock(void *m) ;
extern int pthread_mutex_unlock(void *m) ;
extern int pthread_mutex_destroy(void *m) ;
extern int pthread_cond_signal(void *c) ;
extern int pthread_cond_wait(void *c, void *m) ;
extern void heap_insert(void *h, void *n) ;
extern void *heap_remove_top(void *h) ;
extern struct line *read_input(void) ;
extern void write_output(struct line *lines) ;

static unsigned long nhi ;
static unsigned long nlo ;

static void sortlines(struct line *lines, struct merge_node *node)
{
    nlo = node->nlo;
    if (1UL < nhi) {
      sequential_sort(lines - nlo);
    }
    if (1UL < nlo) {
      sequential_sort(lines);
    }
    merge_loop(node->queue);
  pthread_mutex_destroy(& node->lock);
}

int main(int argc, char **argv)
{
  struct line *lines ;
  struct merge_node node ;
  lines = read_input();
  sortlines(lines, & node);
  write_output(lines);
  return 0;
}
