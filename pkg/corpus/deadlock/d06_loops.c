/* Opposite orders inside loops. */
Lock A, B;
int n;

void *ta(void *arg) {
    int i;
    for (i = 0; i < n; i++) {
        lock(&A);
        lock(&B);
        unlock(&B);
        unlock(&A);
    }
    return NULL;
}

void *tb(void *arg) {
    while (n > 0) {
        lock(&B);
        lock(&A);
        n = n - 1;
        unlock(&A);
        unlock(&B);
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
