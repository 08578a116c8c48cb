/* An early exit releases its lock before returning. */
Lock A, B;
int busy;

void *ta(void *arg) {
    lock(&A);
    if (busy) {
        unlock(&A);
        return NULL;
    }
    lock(&B);
    unlock(&B);
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
