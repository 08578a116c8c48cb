/* Opposite orders, but never nested. */
Lock A, B;

void *ta(void *arg) {
    lock(&A);
    unlock(&A);
    lock(&B);
    unlock(&B);
    return NULL;
}

void *tb(void *arg) {
    lock(&B);
    unlock(&B);
    lock(&A);
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
