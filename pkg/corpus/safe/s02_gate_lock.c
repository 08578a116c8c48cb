/* Opposite orders, but always under the gate lock G. */
Lock G, A, B;

void *ta(void *arg) {
    lock(&G);
    lock(&A);
    lock(&B);
    unlock(&B);
    unlock(&A);
    unlock(&G);
    return NULL;
}

void *tb(void *arg) {
    lock(&G);
    lock(&B);
    lock(&A);
    unlock(&A);
    unlock(&B);
    unlock(&G);
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
