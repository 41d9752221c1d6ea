#include "ring.h"

int ring_push(struct ring *r, int value) {
    if (r->count == r->capacity) {
        return -1;
    }
    r->data[(r->head + r->count) % r->capacity] = value;
    r->count += 1;
    return 0;
}

int ring_pop(struct ring *r, int *out) {
    if (r->count == 0) {
        return -1;
    }
    *out = r->data[r->head];
    r->head = (r->head + 1) % r->capacity;
    r->count -= 1;
    return 0;
}
