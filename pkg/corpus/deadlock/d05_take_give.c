/* Unbalanced helpers: one takes a lock, another gives it back. */
Lock A, B;

void take_a(void) { lock(&A); }
void give_a(void) { unlock(&A); }

void *ta(void *arg) {
    take_a();
    lock(&B);
    unlock(&B);
    give_a();
    return NULL;
}

void *tb(void *arg) {
    lock(&B);
    take_a();
    give_a();
    unlock(&B);
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
