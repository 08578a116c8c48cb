/* Correlated calls to unbalanced helpers. */
Lock A, B;
int c;

void take_ab(void) {
    lock(&A);
    lock(&B);
}

void give_ab(void) {
    unlock(&B);
    unlock(&A);
}

void *ta(void *arg) {
    if (c)
        take_ab();
    if (c)
        give_ab();
    lock(&A);
    unlock(&A);
    return NULL;
}

void *tb(void *arg) {
    lock(&A);
    lock(&B);
    unlock(&B);
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
