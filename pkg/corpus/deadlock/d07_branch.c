/* Only one branch of tb takes the locks in the wrong order. */
Lock A, B;
int flag;

void *ta(void *arg) {
    lock(&A);
    lock(&B);
    unlock(&B);
    unlock(&A);
    return NULL;
}

void *tb(void *arg) {
    if (flag) {
        lock(&A);
        lock(&B);
        unlock(&B);
        unlock(&A);
    } else {
        lock(&B);
        lock(&A);
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
