/* A per-object gate lock guards both orders of its two field locks. */
struct pair {
    Lock gate;
    Lock left;
    Lock right;
};

struct pair p;

void *ta(void *arg) {
    lock(&p.gate);
    lock(&p.left);
    lock(&p.right);
    unlock(&p.right);
    unlock(&p.left);
    unlock(&p.gate);
    return NULL;
}

void *tb(void *arg) {
    lock(&p.gate);
    lock(&p.right);
    lock(&p.left);
    unlock(&p.left);
    unlock(&p.right);
    unlock(&p.gate);
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
