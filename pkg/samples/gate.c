Lock G, A, B;

void ta(void *arg) {
    lock(&G);
    lock(&A);
    lock(&B);
    unlock(&B);
    unlock(&A);
    unlock(&G);
}

void tb(void *arg) {
    lock(&G);
    lock(&B);
    lock(&A);
    unlock(&A);
    unlock(&B);
    unlock(&G);
}
