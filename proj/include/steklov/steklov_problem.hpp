#pragma once

#include <array>
#include <cmath>

#include "steklov/grid.hpp"

namespace steklov {

inline constexpr double kEuler = 2.718281828459045235360287471352662498;

/// sigma_1 = (e-1)/(e+1), the smaller Steklov eigenvalue.
inline double steklov_sigma1() { return (kEuler - 1.0) / (kEuler + 1.0); }
/// sigma_2 = (e+1)/(e-1) = 1/sigma_1.
inline double steklov_sigma2() { return (kEuler + 1.0) / (kEuler - 1.0); }

enum class Normalization { sup_norm, l2_norm };

/// One eigenpair of the boundary eigenvalue problem 0 = F_xx - F,
/// -F_x(0) = sigma F(0), F_x(1) = sigma F(1). There are exactly two.
struct SteklovPair {
    double sigma = 0.0;
    Field profile;
    Normalization normalization = Normalization::sup_norm;
    int index = 0;  // 1 or 2
};

/// Both eigenpairs on the given grid. Sup normalization yields
/// F1(0)=F1(1)=1 and F2(1)=1, F2(0)=-1; l2 normalization uses the trapezoid
/// norm on the grid so the profiles match the spectral basis convention.
std::array<SteklovPair, 2> steklov_eigenpairs(const Grid& grid,
                                              Normalization normalization = Normalization::sup_norm);

struct ResidualPair {
    double interior = 0.0;
    double boundary = 0.0;
};

/// Discrete defect of a pair: max |F_xx - F| over interior nodes (centered
/// differences) and the larger of the two boundary-condition defects
/// (one-sided second-order differences).
ResidualPair steklov_residual(const SteklovPair& pair, const Grid& grid);

}  // namespace steklov
