/* Both threads respect the order A before B. */
Lock A, B;

void *ta(void *arg) {
    lock(&A);
    lock(&B);
    unlock(&B);
    unlock(&A);
    return NULL;
}

void *tb(void *arg) {
    lock(&A);
    lock(&B);
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
