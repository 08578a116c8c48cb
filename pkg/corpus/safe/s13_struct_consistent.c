/* Field locks taken in one global order through pointers. */
struct node {
    int value;
    pthread_mutex_t mu;
};

struct node *head, *tail;

void *ta(void *arg) {
    pthread_mutex_lock(&head->mu);
    pthread_mutex_lock(&tail->mu);
    tail->value = head->value;
    pthread_mutex_unlock(&tail->mu);
    pthread_mutex_unlock(&head->mu);
    return NULL;
}

void *tb(void *arg) {
    pthread_mutex_lock(&head->mu);
    pthread_mutex_lock(&tail->mu);
    head->value = tail->value;
    pthread_mutex_unlock(&head->mu);
    pthread_mutex_unlock(&tail->mu);
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
