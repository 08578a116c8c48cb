/* do-while bodies with consistent nesting. */
Lock A, B;
int n;

void *ta(void *arg) {
    do {
        lock(&A);
        lock(&B);
        n = n - 1;
        unlock(&B);
        unlock(&A);
    } while (n > 0);
    return NULL;
}

void *tb(void *arg) {
    do {
        lock(&A);
        unlock(&A);
        lock(&B);
        unlock(&B);
    } while (n > 0);
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
