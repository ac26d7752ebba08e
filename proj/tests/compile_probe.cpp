#include "relog/sim/harness.hpp"
int main() { return 0; }
