#include "siruv/residence_matrix.hpp"

#include <cmath>
#include <string>

namespace siruv {

ResidenceMatrix ResidenceMatrix::identity(std::size_t n) {
    if (n == 0) throw NonSquareMatrix("0x0 matrix");
    std::vector<double> p(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1.0;
    return ResidenceMatrix(n, std::move(p));
}

std::vector<std::vector<double>> ResidenceMatrix::rows() const {
    std::vector<std::vector<double>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out[i].assign(p_.begin() + i * n_, p_.begin() + (i + 1) * n_);
    return out;
}

ResidenceMatrix validate_residence_matrix(const std::vector<std::vector<double>>& raw,
                                          double tol) {
    const std::size_t n = raw.size();
    if (n == 0) throw NonSquareMatrix("0 rows");
    for (std::size_t i = 0; i < n; ++i)
        if (raw[i].size() != n)
            throw NonSquareMatrix("row " + std::to_string(i) + " has " +
                                  std::to_string(raw[i].size()) + " entries, expected " +
                                  std::to_string(n));

    std::vector<double> p;
    p.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double e = raw[i][j];
            if (!(e >= 0.0 && e <= 1.0)) throw EntryOutOfRange(i, j, e);
            row_sum += e;
            p.push_back(e);
        }
        if (std::abs(row_sum - 1.0) > tol) throw RowSumViolation(i, row_sum);
    }
    return ResidenceMatrix(n, std::move(p));
}

double effective_population(const ResidenceMatrix& P, std::span<const double> host_pops,
                            std::size_t j) {
    const std::size_t n = P.size();
    if (host_pops.size() != n)
        throw DimensionMismatch("got " + std::to_string(host_pops.size()) +
                                " host populations for " + std::to_string(n) + " patches");
    if (j >= n) throw DimensionMismatch("patch index " + std::to_string(j));
    for (double N : host_pops)
        if (!(std::isfinite(N) && N > 0.0))
            throw InvalidParams("host populations must be > 0");

    double e = 0.0;
    for (std::size_t k = 0; k < n; ++k) e += P(k, j) * host_pops[k];
    if (e <= 0.0) throw ZeroEffectivePopulation(j);
    return e;
}

std::vector<double> effective_populations(const ResidenceMatrix& P,
                                          std::span<const double> host_pops) {
    std::vector<double> out(P.size());
    for (std::size_t j = 0; j < P.size(); ++j) out[j] = effective_population(P, host_pops, j);
    return out;
}

} // namespace siruv
