/* Two threads and a helper that releases a lock it did not acquire. */
Lock L1, L2, L3, L4;

void f(Lock *L3p) {
  lock(&L4);
  unlock(&L3p);
  lock(&L2);
  /* ... */
  unlock(&L4); }
void *t1(void *arg) {
  lock(&L1);
  lock(&L3);
  /* ... */
  f(&L3);
  unlock(&L1); }
void *t2(void *arg) {
  lock(&L2);
  /* ... */
  lock(&L1); }
