/* Loops that leave early always drop their lock first. */
Lock A, B;
int n;

void *ta(void *arg) {
    int i;
    for (i = 0; i < n; i++) {
        lock(&A);
        if (i == 3) {
            unlock(&A);
            continue;
        }
        lock(&B);
        unlock(&B);
        unlock(&A);
    }
    return NULL;
}

void *tb(void *arg) {
    while (1) {
        lock(&B);
        if (n == 0) {
            unlock(&B);
            break;
        }
        n = n - 1;
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
