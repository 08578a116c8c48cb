/* The second acquisition is three calls deep. */
Lock A, B;

void level3(void) {
    lock(&B);
    unlock(&B);
}

void level2(void) { level3(); }
void level1(void) { level2(); }

void grab_a(void) {
    lock(&A);
    unlock(&A);
}

void *ta(void *arg) {
    lock(&A);
    level1();
    unlock(&A);
    return NULL;
}

void *tb(void *arg) {
    lock(&B);
    grab_a();
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
