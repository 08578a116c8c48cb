/* A recursive walker that takes its locks in a fixed order. */
Lock A, B;
int depth;

void walk(void) {
    lock(&A);
    lock(&B);
    depth = depth - 1;
    unlock(&B);
    unlock(&A);
    if (depth > 0)
        walk();
}

void *ta(void *arg) {
    walk();
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
