/* The callee releases a lock held by its caller and takes another one. */
Lock L1, L2, L3, L4;

void f(Lock *m) {
    lock(&L4);
    unlock(m);
    lock(&L2);
    unlock(&L4);
    unlock(&L2);
}

void *ta(void *arg) {
    lock(&L1);
    lock(&L3);
    f(&L3);
    unlock(&L1);
    return NULL;
}

void *tb(void *arg) {
    lock(&L2);
    lock(&L1);
    unlock(&L1);
    unlock(&L2);
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
