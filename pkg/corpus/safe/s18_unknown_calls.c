/* Library calls the analysis knows nothing about. */
#include <stdio.h>
#include <stdlib.h>

Lock A, B;

void *ta(void *arg) {
    char *buf = malloc(16);
    lock(&A);
    printf("%s\n", buf);
    lock(&B);
    unlock(&B);
    unlock(&A);
    free(buf);
    return NULL;
}

void *tb(void *arg) {
    lock(&A);
    puts("tb");
    unlock(&A);
    lock(&B);
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
