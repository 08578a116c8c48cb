/* Unbalanced braces: the front end must reject this file. */
Lock A;

void *ta(void *arg) {
    lock(&A);
    if (arg {
        unlock(&A);
    }
    return NULL;
}
