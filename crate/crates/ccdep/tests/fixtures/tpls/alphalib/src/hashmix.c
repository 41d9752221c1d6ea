/* avalanche mixer used by the open-addressing table */
unsigned long alpha_mix(unsigned long key) {
    key = (~key) + (key << 21);
    key = key ^ (key >> 24);
    key = (key + (key << 3)) + (key << 8);
    key = key ^ (key >> 14);
    key = (key + (key << 2)) + (key << 4);
    return key ^ (key >> 28);
}

unsigned long alpha_probe(unsigned long h, unsigned long i, unsigned long mask) {
    unsigned long slot = (h + i * (i + 1) / 2) & mask;
    if (slot == mask) {
        slot = (slot + 1) & mask;
    }
    return slot;
}
