/* Single-threaded program with nested locking. */
Lock A, B;

void step(void) {
    lock(&A);
    lock(&B);
    unlock(&B);
    unlock(&A);
}

int main(void) {
    step();
    step();
    return 0;
}
