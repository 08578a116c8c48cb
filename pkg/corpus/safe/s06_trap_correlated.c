/* Correlated branches: after them A and B are both free, but a
   path-insensitive analysis believes B may still be held. */
Lock A, B;
int c;

void *ta(void *arg) {
    if (c) {
        lock(&A);
        lock(&B);
    }
    if (c) {
        unlock(&B);
        unlock(&A);
    }
    lock(&A);
    unlock(&A);
    return NULL;
}

void *tb(void *arg) {
    lock(&A);
    lock(&B);
    unlock(&B);
    unlock(&A);
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
