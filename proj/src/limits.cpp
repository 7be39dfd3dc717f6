#include "ecc/limits.hpp"

#include "ecc/errors.hpp"

#include <algorithm>
#include <set>

namespace ecc {

Matrix System::connect(std::size_t i, std::size_t j) const {
    if (i > j || j >= dims.size()) throw PreconditionError("connect: positions out of order");
    Matrix m = Matrix::identity(dims[i]);
    for (std::size_t t = i; t < j; ++t) m = steps[t] * m;
    return m;
}

std::size_t System::position(const std::string& index) const {
    for (std::size_t t = 0; t < indices.size(); ++t)
        if (indices[t] == index) return t;
    throw PreconditionError("unknown system index '" + index + "'");
}

void check_system(const System& s) {
    if (s.indices.size() != s.dims.size()) throw PreconditionError("system: index and dimension lists differ");
    if (s.steps.size() + 1 != s.dims.size() && !(s.dims.empty() && s.steps.empty()))
        throw PreconditionError("system: need exactly one step between consecutive stages");
    std::set<std::string> seen(s.indices.begin(), s.indices.end());
    if (seen.size() != s.indices.size()) throw PreconditionError("system: duplicate index");
    for (std::size_t t = 0; t < s.steps.size(); ++t) {
        if (s.steps[t].cols() != s.dims[t] || s.steps[t].rows() != s.dims[t + 1])
            throw PreconditionError("system: step " + std::to_string(t) + " has the wrong shape");
        if (!s.steps[t].is_nonnegative()) throw PreconditionError("system: negative matrix entry");
    }
}

ExtVector mat_apply(const Matrix& m, const ExtVector& v) {
    if (v.size() != m.cols()) throw PreconditionError("mat_apply: shape mismatch");
    ExtVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += ExtScalar(m.at(i, j)) * v[j];
    return out;
}

System dualize(const System& s) {
    System d;
    d.direction = s.direction == Direction::inductive ? Direction::projective : Direction::inductive;
    d.indices.assign(s.indices.rbegin(), s.indices.rend());
    d.dims.assign(s.dims.rbegin(), s.dims.rend());
    for (auto it = s.steps.rbegin(); it != s.steps.rend(); ++it) d.steps.push_back(it->transpose());
    return d;
}

ExtVector functional_iso(const ExtVector& table, std::size_t n) {
    if (table.size() != n) throw PreconditionError("functional table length differs from the dimension");
    return table;
}

ExtScalar functional_eval(const ExtVector& table, const ExtVector& v) {
    if (table.size() != v.size()) throw PreconditionError("functional_eval: length mismatch");
    ExtScalar sum;
    for (std::size_t i = 0; i < v.size(); ++i) sum += table[i] * v[i];
    return sum;
}

bool thread_eval(const System& s, const std::map<std::string, ExtVector>& assignments) {
    std::vector<std::size_t> present;
    for (const auto& [index, v] : assignments) {
        const std::size_t t = s.position(index);
        if (v.size() != s.dims[t]) throw PreconditionError("thread_eval: shape mismatch at " + index);
        present.push_back(t);
    }
    std::sort(present.begin(), present.end());
    for (std::size_t k = 0; k < present.size(); ++k)
        if (present[k] != k) throw PreconditionError("thread_eval: assignments must cover an initial segment");
    // The image of x_i under connect(i, j) is pushed one step at a time.
    for (std::size_t i = 0; i < present.size(); ++i) {
        ExtVector image = assignments.at(s.indices[i]);
        for (std::size_t j = i + 1; j < present.size(); ++j) {
            image = mat_apply(s.steps[j - 1], image);
            if (image != assignments.at(s.indices[j])) return false;
        }
    }
    return true;
}

void check_diagram(const BratteliDiagram& d) {
    if (d.levels.empty()) throw ValidationError("diagram: no levels");
    if (d.matrices.size() + 1 != d.levels.size())
        throw ValidationError("diagram: need one matrix between consecutive levels");
    for (std::size_t k = 0; k < d.levels.size(); ++k) {
        if (d.levels[k].empty()) throw ValidationError("diagram: level " + std::to_string(k) + " has no vertices");
        for (const auto& m : d.levels[k])
            if (m <= 0) throw ValidationError("diagram: multiplicities must be positive");
    }
    for (std::size_t k = 0; k < d.matrices.size(); ++k) {
        const Matrix& a = d.matrices[k];
        if (a.cols() != d.levels[k].size() || a.rows() != d.levels[k + 1].size())
            throw ValidationError("diagram: matrix " + std::to_string(k) + " has the wrong shape");
        if (!a.is_integral() || !a.is_nonnegative())
            throw ValidationError("diagram: incidence entries must be nonnegative integers");
        for (std::size_t j = 0; j < a.cols(); ++j) {
            bool has_edge = false;
            for (std::size_t i = 0; i < a.rows(); ++i) has_edge = has_edge || sgn(a.at(i, j)) > 0;
            if (!has_edge)
                throw ValidationError("diagram: vertex " + std::to_string(j) + " of level " + std::to_string(k) +
                                      " has no outgoing edge");
        }
    }
}

BratteliImport bratteli_import(const BratteliDiagram& d, std::size_t depth) {
    check_diagram(d);
    if (depth > d.levels.size()) throw PreconditionError("bratteli_import: depth exceeds the number of levels");
    BratteliImport out;
    out.groups.direction = Direction::inductive;
    for (std::size_t k = 0; k < depth; ++k) {
        out.groups.indices.push_back(std::to_string(k));
        out.groups.dims.push_back(d.levels[k].size());
        if (k + 1 < depth) out.groups.steps.push_back(d.matrices[k]);
    }
    out.cones = dualize(out.groups);
    for (std::size_t k = 0; k < depth; ++k) out.idempotent_counts.push_back(count_idempotent_threads(out.cones, k));
    return out;
}

Integer count_idempotent_threads(const System& cones, std::size_t k) {
    // In the reversed chain, original stage k sits at position (size - 1 - k);
    // a thread of the truncation is fixed by its value there.
    const std::size_t last = cones.dims.size() - 1;
    const std::size_t top = last - k;
    const std::size_t n = cones.dims[top];
    if (n > 20) throw PreconditionError("idempotent enumeration limited to 20 vertices per level");
    std::set<std::vector<ExtVector>> threads;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        ExtVector v(n);
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U) v[i] = ExtScalar::infinity();
        std::vector<ExtVector> thread{v};
        for (std::size_t t = top; t < last; ++t) {
            thread.push_back(mat_apply(cones.steps[t], thread.back()));
            for (const auto& c : thread.back())
                if (!(c.is_zero() || c.is_infinite())) throw InvariantError("image of an idempotent is not idempotent");
        }
        threads.insert(thread);
    }
    return Integer(threads.size());
}

}  // namespace ecc
