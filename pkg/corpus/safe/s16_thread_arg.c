/* One worker body, started twice with different locks. */
Lock A, B, C;

void *worker(Lock *m) {
    lock(m);
    lock(&C);
    unlock(&C);
    unlock(m);
    return NULL;
}

int main(void) {
    pthread_t th1, th2;
    pthread_create(&th1, NULL, worker, &A);
    pthread_create(&th2, NULL, worker, &B);
    pthread_join(th1, NULL);
    pthread_join(th2, NULL);
    return 0;
}
