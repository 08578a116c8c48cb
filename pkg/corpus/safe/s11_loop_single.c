/* Each thread repeatedly takes one lock. */
Lock A, B;
int n;

void *ta(void *arg) {
    while (n > 0) {
        lock(&A);
        n = n - 1;
        unlock(&A);
    }
    return NULL;
}

void *tb(void *arg) {
    int i;
    for (i = 0; i < 10; i++) {
        lock(&B);
        unlock(&B);
        lock(&A);
        unlock(&A);
    }
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
