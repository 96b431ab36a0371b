// Copyright 2026 The stabtherm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabtherm/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "stabtherm/errors.hpp"

namespace stabtherm {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t num_words(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

cplx i_power(unsigned k) {
    switch (k & 3U) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
    }
}

}  // namespace

char axis_letter(Axis axis) {
    switch (axis) {
        case Axis::X:
            return 'X';
        case Axis::Y:
            return 'Y';
        case Axis::Z:
            return 'Z';
    }
    return '?';
}

Axis parse_axis(std::string_view text) {
    if (text == "x" || text == "X") return Axis::X;
    if (text == "y" || text == "Y") return Axis::Y;
    if (text == "z" || text == "Z") return Axis::Z;
    throw ValidationError("unknown Pauli axis '" + std::string(text) + "'");
}

PauliString::PauliString(std::size_t num_qubits)
    : num_qubits_(num_qubits), xs_(num_words(num_qubits), 0), zs_(num_words(num_qubits), 0) {
    if (num_qubits == 0) throw DimensionError("PauliString needs at least one qubit");
}

PauliString PauliString::from_text(std::string_view text) {
    std::string s(text);
    std::istringstream in(s);
    std::string first;
    std::string second;
    in >> first >> second;
    std::string rest;
    if (in >> rest) throw ValidationError("trailing tokens in Pauli text '" + s + "'");

    std::uint8_t phase = 0;
    std::string letters;
    if (second.empty()) {
        letters = first;
    } else {
        if (first == "+1" || first == "1" || first == "+") {
            phase = 0;
        } else if (first == "+i" || first == "i") {
            phase = 1;
        } else if (first == "-1" || first == "-") {
            phase = 2;
        } else if (first == "-i") {
            phase = 3;
        } else {
            throw ValidationError("bad Pauli phase token '" + first + "'");
        }
        letters = second;
    }
    if (letters.empty()) throw ValidationError("empty Pauli string");
    PauliString p(letters.size());
    for (std::size_t q = 0; q < letters.size(); ++q) p = p.with_letter(q, letters[q]);
    p.phase_ = phase;
    return p;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, Axis axis) {
    PauliString p(num_qubits);
    return p.with_letter(qubit, axis_letter(axis));
}

PauliString PauliString::on_support(std::size_t num_qubits, std::span<const std::size_t> qubits,
                                    Axis axis) {
    PauliString p(num_qubits);
    for (std::size_t q : qubits) {
        if (p.letter(q) != 'I') throw ValidationError("repeated qubit in Pauli support");
        p = p.with_letter(q, axis_letter(axis));
    }
    return p;
}

bool PauliString::x_bit(std::size_t qubit) const {
    if (qubit >= num_qubits_) throw DimensionError("qubit index out of range");
    return (xs_[qubit / kWordBits] >> (qubit % kWordBits)) & 1U;
}

bool PauliString::z_bit(std::size_t qubit) const {
    if (qubit >= num_qubits_) throw DimensionError("qubit index out of range");
    return (zs_[qubit / kWordBits] >> (qubit % kWordBits)) & 1U;
}

char PauliString::letter(std::size_t qubit) const {
    static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
    return kLetters[static_cast<int>(x_bit(qubit)) | (static_cast<int>(z_bit(qubit)) << 1)];
}

cplx PauliString::phase_factor() const { return i_power(phase_); }

PauliString PauliString::with_letter(std::size_t qubit, char letter) const {
    if (qubit >= num_qubits_) throw DimensionError("qubit index out of range");
    bool x = false;
    bool z = false;
    switch (letter) {
        case 'I':
        case '_':
            break;
        case 'X':
        case 'x':
            x = true;
            break;
        case 'Y':
        case 'y':
            x = z = true;
            break;
        case 'Z':
        case 'z':
            z = true;
            break;
        default:
            throw ValidationError(std::string("bad Pauli letter '") + letter + "'");
    }
    PauliString out = *this;
    const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
    auto& xw = out.xs_[qubit / kWordBits];
    auto& zw = out.zs_[qubit / kWordBits];
    xw = x ? (xw | bit) : (xw & ~bit);
    zw = z ? (zw | bit) : (zw & ~bit);
    return out;
}

PauliString PauliString::with_log_i_phase(std::uint8_t phase) const {
    PauliString out = *this;
    out.phase_ = phase & 3U;
    return out;
}

PauliString PauliString::embedded(std::size_t num_qubits, std::size_t offset) const {
    if (offset + num_qubits_ > num_qubits) throw DimensionError("embedding does not fit");
    PauliString out(num_qubits);
    for (std::size_t q = 0; q < num_qubits_; ++q) out = out.with_letter(q + offset, letter(q));
    out.phase_ = phase_;
    return out;
}

void PauliString::check_compatible(const PauliString& other) const {
    if (num_qubits_ != other.num_qubits_) {
        throw DimensionError("Pauli strings act on " + std::to_string(num_qubits_) + " and " +
                             std::to_string(other.num_qubits_) + " qubits");
    }
}

PauliString PauliString::operator*(const PauliString& rhs) const {
    check_compatible(rhs);
    PauliString out = *this;
    // Per-bit-position mod-4 counters of the i / -i factors picked up when
    // the letters on each qubit are multiplied.
    std::uint64_t cnt1 = 0;
    std::uint64_t cnt2 = 0;
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        const std::uint64_t old_x1 = xs_[w];
        const std::uint64_t old_z1 = zs_[w];
        const std::uint64_t x2 = rhs.xs_[w];
        const std::uint64_t z2 = rhs.zs_[w];
        const std::uint64_t x1 = old_x1 ^ x2;
        const std::uint64_t z1 = old_z1 ^ z2;
        const std::uint64_t x1z2 = old_x1 & z2;
        const std::uint64_t anti = (x2 & old_z1) ^ x1z2;
        cnt2 ^= (cnt1 ^ x1 ^ z1 ^ x1z2) & anti;
        cnt1 ^= anti;
        out.xs_[w] = x1;
        out.zs_[w] = z1;
    }
    unsigned s = static_cast<unsigned>(std::popcount(cnt1));
    s ^= static_cast<unsigned>(std::popcount(cnt2)) << 1;
    out.phase_ = static_cast<std::uint8_t>((phase_ + rhs.phase_ + s) & 3U);
    return out;
}

PauliString PauliString::adjoint() const {
    PauliString out = *this;
    out.phase_ = static_cast<std::uint8_t>((4 - phase_) & 3U);
    return out;
}

bool PauliString::commutes(const PauliString& other) const {
    check_compatible(other);
    unsigned parity = 0;
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        parity ^= static_cast<unsigned>(
            std::popcount((xs_[w] & other.zs_[w]) ^ (zs_[w] & other.xs_[w])) & 1);
    }
    return parity == 0;
}

bool PauliString::is_identity_up_to_phase() const {
    return std::all_of(xs_.begin(), xs_.end(), [](auto w) { return w == 0; }) &&
           std::all_of(zs_.begin(), zs_.end(), [](auto w) { return w == 0; });
}

std::size_t PauliString::weight() const {
    std::size_t total = 0;
    for (std::size_t w = 0; w < xs_.size(); ++w) total += std::popcount(xs_[w] | zs_[w]);
    return total;
}

std::vector<std::size_t> PauliString::support() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < num_qubits_; ++q) {
        if (x_bit(q) || z_bit(q)) out.push_back(q);
    }
    return out;
}

std::string PauliString::str() const {
    static constexpr const char* kPhases[4] = {"+1", "+i", "-1", "-i"};
    std::string out = kPhases[phase_];
    out += ' ';
    for (std::size_t q = 0; q < num_qubits_; ++q) out += letter(q);
    return out;
}

SparseMatrix PauliString::to_sparse(std::size_t max_qubits) const {
    if (num_qubits_ > max_qubits || num_qubits_ >= kWordBits) {
        throw CapacityError("sparse Pauli realization limited to " + std::to_string(max_qubits) +
                            " qubits, got " + std::to_string(num_qubits_));
    }
    const std::size_t dim = std::size_t{1} << num_qubits_;
    const std::uint64_t x = xs_[0];
    const std::uint64_t z = zs_[0];
    const cplx base = i_power(phase_ + static_cast<unsigned>(std::popcount(x & z)));
    SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.reserve(Eigen::VectorXi::Constant(static_cast<Eigen::Index>(dim), 1));
    for (std::uint64_t col = 0; col < dim; ++col) {
        const bool negate = std::popcount(z & col) & 1;
        m.insert(static_cast<Eigen::Index>(col ^ x), static_cast<Eigen::Index>(col)) =
            negate ? -base : base;
    }
    m.makeCompressed();
    return m;
}

Matrix PauliString::to_dense(std::size_t max_qubits) const {
    if (num_qubits_ > max_qubits) {
        throw CapacityError("dense Pauli realization limited to " + std::to_string(max_qubits) +
                            " qubits, got " + std::to_string(num_qubits_));
    }
    return Matrix(to_sparse(max_qubits));
}

bool PauliString::same_letters(const PauliString& other) const {
    return num_qubits_ == other.num_qubits_ && xs_ == other.xs_ && zs_ == other.zs_;
}

bool PauliString::operator<(const PauliString& other) const {
    if (num_qubits_ != other.num_qubits_) return num_qubits_ < other.num_qubits_;
    if (xs_ != other.xs_) return xs_ < other.xs_;
    if (zs_ != other.zs_) return zs_ < other.zs_;
    return phase_ < other.phase_;
}

PauliString multiply(const PauliString& p, const PauliString& q) { return p * q; }

bool commutes(const PauliString& p, const PauliString& q) { return p.commutes(q); }

Matrix to_dense(const PauliString& p, std::size_t max_qubits) { return p.to_dense(max_qubits); }

// ---------------------------------------------------------------------------

PauliSum::PauliSum(const PauliString& p, cplx coefficient) : num_qubits_(p.num_qubits()) {
    add_term(coefficient, p);
    canonicalize();
}

PauliSum PauliSum::identity(std::size_t num_qubits, cplx coefficient) {
    return PauliSum(PauliString(num_qubits), coefficient);
}

void PauliSum::add_term(cplx coefficient, const PauliString& p) {
    if (!std::isfinite(coefficient.real()) || !std::isfinite(coefficient.imag())) {
        throw ValidationError("PauliSum coefficients must be finite");
    }
    if (num_qubits_ == 0) num_qubits_ = p.num_qubits();
    if (p.num_qubits() != num_qubits_) throw DimensionError("PauliSum term size mismatch");
    terms_.push_back({coefficient * p.phase_factor(), p.without_phase()});
}

void PauliSum::canonicalize() {
    std::map<PauliString, cplx> merged;
    for (const auto& t : terms_) merged[t.string] += t.coefficient;
    terms_.clear();
    for (const auto& [p, c] : merged) {
        if (std::abs(c) > 1e-15) terms_.push_back({c, p});
    }
}

PauliSum& PauliSum::operator+=(const PauliSum& rhs) {
    for (const auto& t : rhs.terms_) add_term(t.coefficient, t.string);
    if (num_qubits_ == 0) num_qubits_ = rhs.num_qubits_;
    canonicalize();
    return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& rhs) {
    for (const auto& t : rhs.terms_) add_term(-t.coefficient, t.string);
    if (num_qubits_ == 0) num_qubits_ = rhs.num_qubits_;
    canonicalize();
    return *this;
}

PauliSum& PauliSum::operator*=(cplx scale) {
    for (auto& t : terms_) t.coefficient *= scale;
    canonicalize();
    return *this;
}

PauliSum PauliSum::operator+(const PauliSum& rhs) const {
    PauliSum out = *this;
    out += rhs;
    return out;
}

PauliSum PauliSum::operator-(const PauliSum& rhs) const {
    PauliSum out = *this;
    out -= rhs;
    return out;
}

PauliSum PauliSum::operator*(const PauliSum& rhs) const {
    if (num_qubits_ != rhs.num_qubits_) throw DimensionError("PauliSum size mismatch");
    PauliSum out(num_qubits_);
    for (const auto& a : terms_) {
        for (const auto& b : rhs.terms_) out.add_term(a.coefficient * b.coefficient, a.string * b.string);
    }
    out.canonicalize();
    return out;
}

PauliSum PauliSum::operator*(cplx scale) const {
    PauliSum out = *this;
    out *= scale;
    return out;
}

PauliSum PauliSum::adjoint() const {
    PauliSum out(num_qubits_);
    // Unit-phase strings are Hermitian, so only coefficients conjugate.
    for (const auto& t : terms_) out.terms_.push_back({std::conj(t.coefficient), t.string});
    return out;
}

double PauliSum::coefficient_l1() const {
    double total = 0.0;
    for (const auto& t : terms_) total += std::abs(t.coefficient);
    return total;
}

bool PauliSum::is_hermitian(double tol) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [tol](const Term& t) { return std::abs(t.coefficient.imag()) <= tol; });
}

SparseMatrix PauliSum::to_sparse(std::size_t max_qubits) const {
    if (num_qubits_ == 0) throw DimensionError("empty PauliSum has no qubit count");
    if (num_qubits_ > max_qubits) {
        throw CapacityError("sparse realization limited to " + std::to_string(max_qubits) + " qubits, model has " +
                            std::to_string(num_qubits_));
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits_);
    SparseMatrix m(dim, dim);
    for (const auto& t : terms_) m += t.coefficient * t.string.to_sparse(max_qubits);
    m.prune(cplx(0.0), 1e-15);
    m.makeCompressed();
    return m;
}

Matrix PauliSum::to_dense(std::size_t max_qubits) const {
    if (num_qubits_ > max_qubits) {
        throw CapacityError("dense realization limited to " + std::to_string(max_qubits) + " qubits, model has " +
                            std::to_string(num_qubits_) + "; use L = 2 for dense observables");
    }
    return Matrix(to_sparse(max_qubits));
}

PauliSum spectral_projector(const PauliString& h, int sign) {
    if (!h.is_hermitian()) throw ValidationError("spectral projector needs a Hermitian Pauli");
    PauliSum out = PauliSum::identity(h.num_qubits(), 0.5);
    out += PauliSum(h, sign >= 0 ? 0.5 : -0.5);
    return out;
}

}  // namespace stabtherm
