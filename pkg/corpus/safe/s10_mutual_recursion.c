/* Mutually recursive functions with balanced locking. */
Lock A, B;
int n;

void odd(void);

void even(void) {
    lock(&A);
    n = n - 1;
    unlock(&A);
    if (n > 0)
        odd();
}

void odd(void) {
    lock(&B);
    n = n - 1;
    unlock(&B);
    if (n > 0)
        even();
}

void *ta(void *arg) {
    even();
    return NULL;
}

void *tb(void *arg) {
    odd();
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
