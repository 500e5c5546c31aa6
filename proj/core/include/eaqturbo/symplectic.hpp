#ifndef EAQTURBO_SYMPLECTIC_HPP
#define EAQTURBO_SYMPLECTIC_HPP

#include <optional>
#include <vector>

#include "eaqturbo/pauli.hpp"
#include "eaqturbo/rng.hpp"

namespace eaqturbo {

/// Binary symplectic matrix on 2N bits, stored as the images of the basis
/// Pauli operators: row i < N is the image of Z_{i+1}, row N+i the image of
/// X_{i+1}. Acts on row vectors, so the image of a Pauli is the GF(2)
/// combination of rows selected by its bits.
class SymplecticMatrix {
   public:
    SymplecticMatrix() = default;
    SymplecticMatrix(size_t n, std::vector<PauliOperator> rows);

    static SymplecticMatrix identity(size_t n);

    size_t num_qubits() const { return n_; }
    const PauliOperator& row(size_t i) const { return rows_[i]; }
    const PauliOperator& z_image(size_t i) const { return rows_[i]; }
    const PauliOperator& x_image(size_t i) const { return rows_[n_ + i]; }

    /// Image of p under the matrix. Throws on dimension mismatch.
    PauliOperator apply(const PauliOperator& p) const;

    /// Inverse over GF(2): Lambda * M^T * Lambda, Lambda swapping z/x halves.
    SymplecticMatrix inverse() const;

    /// True iff the rows preserve the symplectic form (images of Z_i and X_i
    /// anticommute pairwise for equal i, commute otherwise).
    bool is_symplectic() const;

    /// First row pair violating the form, as indices into the 2N rows.
    std::optional<std::pair<size_t, size_t>> form_violation() const;

    bool operator==(const SymplecticMatrix& other) const = default;

   private:
    size_t n_ = 0;
    std::vector<PauliOperator> rows_;  // 2N rows on N qubits
};

/// Uniformly random element of the binary symplectic group Sp(2N, 2),
/// deterministic for a given generator state.
SymplecticMatrix sample_symplectic(size_t n, Rng& rng);

}  // namespace eaqturbo

#endif
