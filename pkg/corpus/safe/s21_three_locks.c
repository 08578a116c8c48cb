/* Three locks, always acquired along A, B, C. */
Lock A, B, C;

void *ta(void *arg) {
    lock(&A);
    lock(&C);
    unlock(&C);
    unlock(&A);
    lock(&B);
    lock(&C);
    unlock(&C);
    unlock(&B);
    return NULL;
}

void *tb(void *arg) {
    lock(&A);
    lock(&B);
    lock(&C);
    unlock(&C);
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
