/* Threads that do no locking at all. */
void *ta(void *arg) {
    return NULL;
}

void *tb(void *arg) {
}

int main(void) {
    pthread_t th1, th2;
    pthread_create(&th1, NULL, ta, NULL);
    pthread_create(&th2, NULL, tb, NULL);
    pthread_join(th1, NULL);
    pthread_join(th2, NULL);
    return 0;
}
