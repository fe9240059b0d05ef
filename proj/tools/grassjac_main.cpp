#include <iostream>

int main() {
    std::cout << "grassjac cli placeholder\n";
    return 0;
}
