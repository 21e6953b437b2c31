#include "bell3/rng.hpp"

#include <cmath>
#include <numbers>

namespace bell3 {

XorShift64Star::XorShift64Star(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    state_ = z != 0 ? z : 0x9E3779B97F4A7C15ull;
}

std::uint64_t XorShift64Star::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
}

double XorShift64Star::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double XorShift64Star::gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex XorShift64Star::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

CMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, XorShift64Star& rng) {
    std::vector<Complex> e(rows * cols);
    for (auto& z : e) z = rng.complex_gaussian();
    return CMatrix(rows, cols, std::move(e));
}

CMatrix random_unitary(std::size_t n, XorShift64Star& rng) {
    return orthonormalize_columns(random_gaussian_matrix(n, n, rng));
}

CMatrix random_hermitian(std::size_t n, XorShift64Star& rng) {
    const CMatrix g = random_gaussian_matrix(n, n, rng);
    return 0.5 * (g + dagger(g));
}

}  // namespace bell3
