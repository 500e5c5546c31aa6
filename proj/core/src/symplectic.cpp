#include "eaqturbo/symplectic.hpp"

#include <stdexcept>

namespace eaqturbo {

namespace {

// bit k of a row in [z|x] layout
bool row_bit(const PauliOperator& row, size_t n, size_t k) {
    return k < n ? row.z.get(k) : row.x.get(k - n);
}

void set_row_bit(PauliOperator& row, size_t n, size_t k, bool v) {
    if (k < n)
        row.z.set(k, v);
    else
        row.x.set(k - n, v);
}

}  // namespace

SymplecticMatrix::SymplecticMatrix(size_t n, std::vector<PauliOperator> rows)
    : n_(n), rows_(std::move(rows)) {
    if (rows_.size() != 2 * n_) throw std::invalid_argument("SymplecticMatrix: need 2N rows");
    for (const auto& r : rows_)
        if (r.num_qubits() != n_) throw std::invalid_argument("SymplecticMatrix: row length mismatch");
}

SymplecticMatrix SymplecticMatrix::identity(size_t n) {
    std::vector<PauliOperator> rows(2 * n, PauliOperator(n));
    for (size_t i = 0; i < n; ++i) {
        rows[i].z.set(i, true);
        rows[n + i].x.set(i, true);
    }
    return SymplecticMatrix(n, std::move(rows));
}

PauliOperator SymplecticMatrix::apply(const PauliOperator& p) const {
    if (p.num_qubits() != n_) throw std::invalid_argument("apply: dimension mismatch");
    PauliOperator out(n_);
    for (size_t i = 0; i < n_; ++i) {
        if (p.z.get(i)) out *= rows_[i];
        if (p.x.get(i)) out *= rows_[n_ + i];
    }
    return out;
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    size_t two_n = 2 * n_;
    std::vector<PauliOperator> inv(two_n, PauliOperator(n_));
    for (size_t i = 0; i < two_n; ++i)
        for (size_t j = 0; j < two_n; ++j)
            set_row_bit(inv[i], n_, j, row_bit(rows_[(j + n_) % two_n], n_, (i + n_) % two_n));
    return SymplecticMatrix(n_, std::move(inv));
}

std::optional<std::pair<size_t, size_t>> SymplecticMatrix::form_violation() const {
    size_t two_n = 2 * n_;
    for (size_t i = 0; i < two_n; ++i) {
        for (size_t j = i; j < two_n; ++j) {
            int expected = (j == i + n_) ? 1 : 0;
            if (symplectic_product(rows_[i], rows_[j]) != expected) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

bool SymplecticMatrix::is_symplectic() const { return !form_violation().has_value(); }

namespace {

// uniform nonzero GF(2) combination of the given vectors
PauliOperator random_nonzero_combo(const std::vector<PauliOperator>& basis, size_t n, Rng& rng) {
    size_t d = basis.size();
    for (;;) {
        std::vector<bool> coeff(d);
        bool any = false;
        size_t k = 0;
        while (k < d) {
            uint64_t word = rng.next_u64();
            for (size_t b = 0; b < 64 && k < d; ++b, ++k) {
                coeff[k] = (word >> b) & 1;
                any |= coeff[k];
            }
        }
        if (!any) continue;
        PauliOperator v(n);
        for (size_t i = 0; i < d; ++i)
            if (coeff[i]) v *= basis[i];
        return v;
    }
}

}  // namespace

SymplecticMatrix sample_symplectic(size_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_symplectic: need N >= 1");

    // Basis completion: pick the image pair of (Z_j, X_j) uniformly inside the
    // symplectic complement of the pairs already fixed, then reduce the
    // complement basis by symplectic Gram-Schmidt.
    std::vector<PauliOperator> pool;
    pool.reserve(2 * n);
    for (size_t i = 0; i < n; ++i) {
        PauliOperator zi(n), xi(n);
        zi.z.set(i, true);
        xi.x.set(i, true);
        pool.push_back(zi);
        pool.push_back(xi);
    }

    std::vector<PauliOperator> z_rows(n, PauliOperator(n)), x_rows(n, PauliOperator(n));
    for (size_t j = 0; j < n; ++j) {
        PauliOperator v = random_nonzero_combo(pool, n, rng);

        size_t w0_idx = pool.size();
        for (size_t i = 0; i < pool.size(); ++i) {
            if (symplectic_product(v, pool[i])) {
                w0_idx = i;
                break;
            }
        }
        // v is nonzero inside a nondegenerate subspace, so a partner exists
        if (w0_idx == pool.size()) throw std::logic_error("sample_symplectic: degenerate pool");
        PauliOperator w0 = pool[w0_idx];

        // w uniform over {w in complement : <v,w> = 1}
        PauliOperator w = w0;
        for (size_t i = 0; i < pool.size(); ++i) {
            if (i == w0_idx) continue;
            PauliOperator k = pool[i];
            if (symplectic_product(v, k)) k *= w0;
            if (rng.next_bit()) w *= k;
        }

        z_rows[j] = v;
        x_rows[j] = w;

        // project the pool onto the symplectic complement of (v, w)
        for (auto& c : pool) {
            if (symplectic_product(c, w)) c *= v;
            if (symplectic_product(c, v)) c *= w;
        }
        // re-pair; two dependent leftovers reduce to zero and are dropped
        std::vector<PauliOperator> next;
        std::vector<PauliOperator> work = std::move(pool);
        while (!work.empty()) {
            PauliOperator c0 = std::move(work.back());
            work.pop_back();
            if (c0.is_identity()) continue;
            size_t d_idx = work.size();
            for (size_t i = 0; i < work.size(); ++i) {
                if (symplectic_product(c0, work[i])) {
                    d_idx = i;
                    break;
                }
            }
            if (d_idx == work.size()) continue;  // dependent on extracted pairs
            PauliOperator d = work[d_idx];
            work.erase(work.begin() + static_cast<ptrdiff_t>(d_idx));
            for (auto& c : work) {
                if (symplectic_product(c, d)) c *= c0;
                if (symplectic_product(c, c0)) c *= d;
            }
            next.push_back(std::move(c0));
            next.push_back(std::move(d));
        }
        pool = std::move(next);
    }

    std::vector<PauliOperator> rows;
    rows.reserve(2 * n);
    for (auto& r : z_rows) rows.push_back(std::move(r));
    for (auto& r : x_rows) rows.push_back(std::move(r));
    return SymplecticMatrix(n, std::move(rows));
}

}  // namespace eaqturbo
