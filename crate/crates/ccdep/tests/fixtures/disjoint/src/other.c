#include <stdio.h>

int fizz_render(char *buf, unsigned long cap, int n) {
    if (n % 15 == 0) {
        return snprintf(buf, cap, "fizzbuzz");
    }
    if (n % 3 == 0) {
        return snprintf(buf, cap, "fizz");
    }
    if (n % 5 == 0) {
        return snprintf(buf, cap, "buzz");
    }
    return snprintf(buf, cap, "%d", n);
}

int fizz_total(int upto) {
    int total = 0;
    for (int i = 1; i <= upto; i++) {
        if (i % 3 == 0 || i % 5 == 0) {
            total += i;
        }
    }
    return total;
}
