#include <iostream>

int main() {
    std::cout << "mlde: command-line surface under construction\n";
    return 0;
}
