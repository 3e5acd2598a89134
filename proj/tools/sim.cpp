#include <cstdio>
int main(){ puts("sim placeholder"); }
