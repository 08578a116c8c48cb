/* The inner acquisition happens in a helper that takes the lock as argument. */
Lock A, B;

void with_lock(Lock *m) {
    lock(m);
    unlock(m);
}

void *ta(void *arg) {
    lock(&A);
    with_lock(&B);
    unlock(&A);
    return NULL;
}

void *tb(void *arg) {
    lock(&B);
    with_lock(&A);
    unlock(&B);
    return NULL;
}

int main(void) {
    pthread_t th1, th2;
    pthread_create(&th1, NULL, ta, NULL);
    pthread_create(&th2, NULL, tb, NULL);
    pthread_join(th1, NULL);
    pthread_join(th2, NULL);
    return 0;
}
