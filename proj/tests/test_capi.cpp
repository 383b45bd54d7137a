#include "qspair.h"
int main(){return 0;}
