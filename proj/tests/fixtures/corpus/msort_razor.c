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

static unsigned long nthreads ;
static unsigned long nhi ;
static unsigned long nlo ;

static void queue_insert(struct queue *queue, struct merge_node *node)
{
  pthread_mutex_lock(& queue->mutex);
  heap_insert(queue->priority_queue, node);
  node->queued = (_Bool)1;
  pthread_mutex_unlock(& queue->mutex);
  pthread_cond_signal(& queue->cond);
}

static struct merge_node *queue_pop(struct queue *queue)
{
  struct merge_node *node ;
  pthread_mutex_lock(& queue->mutex);
  while (1) {
    node = (struct merge_node *)heap_remove_top(queue->priority_queue);
    if (node) {
      goto pop_break;
    }
    pthread_cond_wait(& queue->cond, & queue->mutex);
  }
  pop_break: ;
  pthread_mutex_unlock(& queue->mutex);
  return (node);
}

static void sortlines(struct line *lines, struct merge_node *node)
{
  struct merge_node *next ;
  if (nthreads > 1UL) {
    queue_insert(node->queue, node);
    next = queue_pop(node->queue);
    parallel_sort((struct line *)next);
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

int main(int argc, char **argv)
{
  struct line *lines ;
  struct merge_node node ;
  lines = read_input();
  if (argc > 1) {
    nthreads = 4UL;
  }
  sortlines(lines, & node);
  write_output(lines);
  return 0;
}
