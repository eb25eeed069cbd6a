#include "perron/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "perron/digraph.hpp"

namespace perron {

std::string to_string(Norm norm) {
    switch (norm) {
        case Norm::one: return "1";
        case Norm::two: return "2";
        case Norm::inf: return "inf";
    }
    return "inf";
}

Norm norm_from_string(const std::string& text) {
    if (text == "1" || text == "one") return Norm::one;
    if (text == "2" || text == "two") return Norm::two;
    if (text == "inf" || text == "infinity" || text == "max") return Norm::inf;
    throw PreconditionError("unsupported norm '" + text + "' (expected 1, 2 or inf)");
}

LatticeParts lattice_parts(const LatticeVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i).imag() != 0.0)
            throw PreconditionError("lattice_parts: entry " + std::to_string(i + 1) + " is not real");
    return real_lattice_parts(v.real());
}

std::optional<std::pair<Eigen::Index, Eigen::Index>> first_negative_entry(const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j).imag() != 0.0 || !(m(i, j).real() >= 0.0)) return std::make_pair(i, j);
    return std::nullopt;
}

PositiveOperator::PositiveOperator(Matrix matrix, Norm norm) : matrix_(std::move(matrix)), norm_(norm) {
    if (matrix_.rows() != matrix_.cols())
        throw PreconditionError("operator matrix must be square, got " + std::to_string(matrix_.rows()) + "x" +
                                std::to_string(matrix_.cols()));
    certified_ = !first_negative_entry(matrix_).has_value();
}

PositiveOperator PositiveOperator::certified(Matrix matrix, Norm norm) {
    PositiveOperator op(std::move(matrix), norm);
    if (auto bad = first_negative_entry(op.matrix_)) {
        std::ostringstream os;
        os.precision(17);
        const Scalar v = op.matrix_(bad->first, bad->second);
        os << "entry (" << bad->first + 1 << "," << bad->second + 1 << ") = ";
        if (v.imag() == 0.0) os << v.real();
        else os << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
        os << " is not a nonnegative real number";
        throw NegativityError(os.str(), bad->first, bad->second);
    }
    return op;
}

PositiveOperator PositiveOperator::from_real(const RealMatrix& matrix, Norm norm) {
    return certified(matrix.cast<Scalar>(), norm);
}

void PositiveOperator::require_certified(const char* operation) const {
    if (!certified_)
        throw PreconditionError(std::string(operation) + " requires an entrywise nonnegative operator");
}

CoordinateIdeal::CoordinateIdeal(std::vector<std::size_t> indices, std::size_t ambient_dim)
    : indices_(std::move(indices)), ambient_(ambient_dim) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (!indices_.empty() && indices_.back() >= ambient_)
        throw PreconditionError("ideal index " + std::to_string(indices_.back() + 1) + " exceeds dimension " +
                                std::to_string(ambient_));
}

CoordinateIdeal CoordinateIdeal::whole(std::size_t n) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return CoordinateIdeal(std::move(all), n);
}

bool CoordinateIdeal::contains_index(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<std::size_t> CoordinateIdeal::complement() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ambient_; ++i)
        if (!contains_index(i)) out.push_back(i);
    return out;
}

bool CoordinateIdeal::contains(const Vector& v, double tol) const {
    for (std::size_t i : complement())
        if (std::abs(v(static_cast<Eigen::Index>(i))) > tol) return false;
    return true;
}

std::string CoordinateIdeal::to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(indices_[k] + 1);
    }
    return s + "}";
}

std::optional<std::pair<std::size_t, std::size_t>> invariance_violation(const Matrix& t, const CoordinateIdeal& f) {
    for (std::size_t j : f.indices())
        for (std::size_t i : f.complement())
            if (t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != Scalar(0)) return std::make_pair(i, j);
    return std::nullopt;
}

namespace {

CoordinateIdeal ideal_from_components(const Condensation& c, const std::vector<bool>& chosen, std::size_t n) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < chosen.size(); ++k)
        if (chosen[k]) idx.insert(idx.end(), c.components[k].begin(), c.components[k].end());
    return CoordinateIdeal(std::move(idx), n);
}

void enumerate_down_sets(const Condensation& c, std::size_t k, std::vector<bool>& chosen, std::size_t n,
                         std::vector<CoordinateIdeal>& out) {
    if (k == c.components.size()) {
        out.push_back(ideal_from_components(c, chosen, n));
        return;
    }
    // Components are in topological order, so all parents of k are decided.
    bool allowed = std::all_of(c.parents[k].begin(), c.parents[k].end(), [&](std::size_t p) { return chosen[p]; });
    chosen[k] = false;
    enumerate_down_sets(c, k + 1, chosen, n, out);
    if (allowed) {
        chosen[k] = true;
        enumerate_down_sets(c, k + 1, chosen, n, out);
        chosen[k] = false;
    }
}

}  // namespace

IdealEnumeration invariant_ideals(const PositiveOperator& t) {
    t.require_certified("invariant_ideals");
    const auto n = static_cast<std::size_t>(t.dim());
    // T e_j has support {i : T_ij != 0}; an invariant coordinate set must
    // contain every i with an edge i -> j into it.
    Condensation c = condense(Digraph::of_pattern(t.matrix()));
    IdealEnumeration result;
    if (n <= 20) {
        std::vector<bool> chosen(c.components.size(), false);
        enumerate_down_sets(c, 0, chosen, n, result.ideals);
    } else {
        result.complete = false;
        result.ideals.push_back(CoordinateIdeal::zero(n));
        result.ideals.push_back(CoordinateIdeal::whole(n));
        for (std::size_t k = 0; k < c.components.size(); ++k) {
            std::vector<bool> chosen(c.components.size(), false);
            chosen[k] = true;
            for (std::size_t q = k + 1; q-- > 0;)
                if (chosen[q])
                    for (std::size_t p : c.parents[q]) chosen[p] = true;
            result.ideals.push_back(ideal_from_components(c, chosen, n));
        }
    }
    auto less = [](const CoordinateIdeal& a, const CoordinateIdeal& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.indices() < b.indices();
    };
    std::sort(result.ideals.begin(), result.ideals.end(), less);
    result.ideals.erase(std::unique(result.ideals.begin(), result.ideals.end()), result.ideals.end());
    return result;
}

namespace {

Matrix principal_submatrix(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                m(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b]));
    return out;
}

}  // namespace

InducedPair induce(const PositiveOperator& t, const CoordinateIdeal& f) {
    if (f.ambient_dim() != static_cast<std::size_t>(t.dim()))
        throw PreconditionError("induce: ideal dimension does not match operator");
    if (auto bad = invariance_violation(t.matrix(), f)) {
        throw PreconditionError("induce: ideal " + f.to_string() + " is not invariant; entry (" +
                                std::to_string(bad->first + 1) + "," + std::to_string(bad->second + 1) +
                                ") maps into the complement");
    }
    InducedPair p;
    p.ideal_indices = f.indices();
    p.quotient_indices = f.complement();
    p.restriction = PositiveOperator(principal_submatrix(t.matrix(), p.ideal_indices, p.ideal_indices), t.norm_choice());
    p.quotient =
        PositiveOperator(principal_submatrix(t.matrix(), p.quotient_indices, p.quotient_indices), t.norm_choice());
    return p;
}

Matrix reassemble(const InducedPair& pair, const Matrix& coupling) {
    const auto k = static_cast<Eigen::Index>(pair.ideal_indices.size());
    const auto m = static_cast<Eigen::Index>(pair.quotient_indices.size());
    Matrix out = Matrix::Zero(k + m, k + m);
    std::vector<std::size_t> order = pair.ideal_indices;
    order.insert(order.end(), pair.quotient_indices.begin(), pair.quotient_indices.end());
    Matrix block = Matrix::Zero(k + m, k + m);
    block.topLeftCorner(k, k) = pair.restriction.matrix();
    block.topRightCorner(k, m) = coupling;
    block.bottomRightCorner(m, m) = pair.quotient.matrix();
    for (Eigen::Index a = 0; a < k + m; ++a)
        for (Eigen::Index b = 0; b < k + m; ++b)
            out(static_cast<Eigen::Index>(order[a]), static_cast<Eigen::Index>(order[b])) = block(a, b);
    return out;
}

ClosureDiagnostic in_closure_principal_ideal(const RealVector& x, const RealVector& y, Norm norm) {
    if (x.size() != y.size())
        throw PreconditionError("in_closure_principal_ideal: dimension mismatch (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
    if ((x.array() < 0.0).any() || (y.array() < 0.0).any())
        throw PreconditionError("in_closure_principal_ideal: both vectors must be nonnegative");

    ClosureDiagnostic d;
    d.support_oracle = true;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x(i) > 0.0 && y(i) == 0.0) d.support_oracle = false;

    d.threshold = 1e-9 * vector_norm(x, norm);
    double last = 0.0;
    for (int k = 1; k <= 30; ++k) {
        const double s = std::ldexp(1.0, -k);
        RealVector neg = (s * x - y).cwiseMax(0.0);
        last = vector_norm(neg, norm) / s;
        d.s_values.push_back(s);
        d.ratios.push_back(last);
    }
    d.numeric_verdict = last <= d.threshold;
    d.agree = d.numeric_verdict == d.support_oracle;
    return d;
}

QuasiInteriorResult is_quasi_interior(const RealVector& y, Norm norm) {
    if ((y.array() < 0.0).any()) throw PreconditionError("is_quasi_interior: vector must be nonnegative");
    QuasiInteriorResult r;
    r.quasi_interior = (y.array() > 0.0).all();
    r.cross_check = true;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        RealVector e = RealVector::Unit(y.size(), i);
        if (!in_closure_principal_ideal(e, y, norm).numeric_verdict) r.cross_check = false;
    }
    r.agree = r.quasi_interior == r.cross_check;
    return r;
}

}  // namespace perron
