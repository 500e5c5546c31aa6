#ifndef EAQTURBO_TESTS_TEST_UTIL_HPP
#define EAQTURBO_TESTS_TEST_UTIL_HPP

#include <string>
#include <vector>

#include "eaqturbo/encoder.hpp"

namespace eaqturbo::testing {

inline std::string data_path(const std::string& name) {
    return std::string(EAQTURBO_DATA_DIR) + "/" + name;
}

inline ConvolutionalEncoder load_data_encoder(const std::string& name) {
    return read_encoder_file(data_path(name));
}

/// All bundled example encoders, indexed 1..10.
inline std::vector<std::string> example_bank() {
    return {"ea01.enc", "ea02.enc", "ea03.enc", "ea04.enc", "ea05.enc",
            "ea06.enc", "ea07.enc", "ea08.enc", "ea09.enc", "ea10.enc"};
}

inline PauliOperator pauli(const std::string& s) { return PauliOperator::from_string(s); }

/// Random Pauli on n qubits, uniform over all 4^n.
inline PauliOperator random_pauli(size_t n, Rng& rng) {
    PauliOperator p(n);
    for (size_t i = 0; i < n; ++i)
        p.set_qubit(i, static_cast<Pauli>(rng.below(4)));
    return p;
}

}  // namespace eaqturbo::testing

#endif
