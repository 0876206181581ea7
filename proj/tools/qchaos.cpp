#include <cstdio>

int main() {
    std::puts("qchaos: pipeline CLI not wired up yet");
    return 0;
}
