/* Classic opposite acquisition order. */
#include <pthread.h>

pthread_mutex_t A, B;

void *ta(void *arg) {
    pthread_mutex_lock(&A);
    pthread_mutex_lock(&B);
    pthread_mutex_unlock(&B);
    pthread_mutex_unlock(&A);
    return NULL;
}

void *tb(void *arg) {
    pthread_mutex_lock(&B);
    pthread_mutex_lock(&A);
    pthread_mutex_unlock(&A);
    pthread_mutex_unlock(&B);
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
