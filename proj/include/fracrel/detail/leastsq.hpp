#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracrel::detail {

/// Dense least squares min ‖A x - b‖₂ by Householder QR. A is m×k
/// row-major, m >= k; returns x of size k.
inline std::vector<double> least_squares(std::vector<double> A, std::vector<double> b, int m, int k) {
    if (m < k || static_cast<int>(A.size()) != m * k || static_cast<int>(b.size()) != m)
        throw std::invalid_argument("least_squares: bad dimensions");
    for (int col = 0; col < k; ++col) {
        double norm = 0.0;
        for (int i = col; i < m; ++i) norm += A[i * k + col] * A[i * k + col];
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::runtime_error("least_squares: rank deficient column");
        double alpha = A[col * k + col] > 0.0 ? -norm : norm;
        std::vector<double> v(m - col, 0.0);
        v[0] = A[col * k + col] - alpha;
        for (int i = col + 1; i < m; ++i) v[i - col] = A[i * k + col];
        double vnorm2 = 0.0;
        for (double t : v) vnorm2 += t * t;
        if (vnorm2 == 0.0) continue;
        for (int j = col; j < k; ++j) {
            double dot = 0.0;
            for (int i = col; i < m; ++i) dot += v[i - col] * A[i * k + j];
            const double f = 2.0 * dot / vnorm2;
            for (int i = col; i < m; ++i) A[i * k + j] -= f * v[i - col];
        }
        double dotb = 0.0;
        for (int i = col; i < m; ++i) dotb += v[i - col] * b[i];
        const double fb = 2.0 * dotb / vnorm2;
        for (int i = col; i < m; ++i) b[i] -= fb * v[i - col];
    }
    std::vector<double> x(k, 0.0);
    for (int row = k - 1; row >= 0; --row) {
        double acc = b[row];
        for (int j = row + 1; j < k; ++j) acc -= A[row * k + j] * x[j];
        const double diag = A[row * k + row];
        if (diag == 0.0) throw std::runtime_error("least_squares: singular R");
        x[row] = acc / diag;
    }
    return x;
}

} // namespace fracrel::detail
