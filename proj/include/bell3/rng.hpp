#pragma once

#include <cstdint>

#include "bell3/cmatrix.hpp"

namespace bell3 {

/// xorshift64* generator (Vigna 2014: shifts 12/25/27, multiplier
/// 0x2545F4914F6CDD1D). The user seed is expanded through one splitmix64 step
/// so that small seeds give well-mixed, nonzero initial states.
///
/// Streams are part of the reproducibility contract: uniform() takes the top
/// 53 bits, gaussian() is Box-Muller using the cosine branch only (two uniforms
/// per normal), and complex_gaussian() draws the real part first.
class XorShift64Star {
public:
    explicit XorShift64Star(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform in [0, 1).
    double uniform();
    /// Standard normal.
    double gaussian();
    /// Real and imaginary parts independent standard normals.
    Complex complex_gaussian();

private:
    std::uint64_t state_;
};

/// Seeded complex Gaussian matrix (row-major draw order).
CMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, XorShift64Star& rng);
/// Gram-Schmidt orthonormalization of a seeded complex Gaussian matrix.
CMatrix random_unitary(std::size_t n, XorShift64Star& rng);
/// (G + G^dagger)/2 for a seeded complex Gaussian G.
CMatrix random_hermitian(std::size_t n, XorShift64Star& rng);

}  // namespace bell3
