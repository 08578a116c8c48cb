/* The callee drops the caller's lock before taking B. */
Lock A, B;

void handoff(void) {
    unlock(&A);
    lock(&B);
    unlock(&B);
}

void *ta(void *arg) {
    lock(&A);
    handoff();
    return NULL;
}

void *tb(void *arg) {
    lock(&B);
    lock(&A);
    unlock(&A);
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
