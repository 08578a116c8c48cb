/* Locks are fields of global structures. */
struct account {
    int balance;
    pthread_mutex_t mu;
};

struct account src, dst;

void *ta(void *arg) {
    pthread_mutex_lock(&src.mu);
    pthread_mutex_lock(&dst.mu);
    dst.balance = dst.balance + 1;
    pthread_mutex_unlock(&dst.mu);
    pthread_mutex_unlock(&src.mu);
    return NULL;
}

void *tb(void *arg) {
    pthread_mutex_lock(&dst.mu);
    pthread_mutex_lock(&src.mu);
    src.balance = src.balance + 1;
    pthread_mutex_unlock(&src.mu);
    pthread_mutex_unlock(&dst.mu);
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
