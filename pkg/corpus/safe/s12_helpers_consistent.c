/* Helpers always nest B inside A. */
Lock A, B;

void inner(void) {
    lock(&B);
    unlock(&B);
}

void outer(void) {
    lock(&A);
    inner();
    unlock(&A);
}

void *ta(void *arg) {
    outer();
    return NULL;
}

void *tb(void *arg) {
    outer();
    inner();
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
