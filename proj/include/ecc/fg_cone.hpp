/**
 * @file fg_cone.hpp
 * @brief Finitely presented extended Choquet cones.
 *
 * A presentation lists a finite lattice W of idempotents, a finite generator
 * set X, the support idempotent of each generator, the relation x ≤ w, the
 * extreme-ray representatives R_w of each stratum C_w, and the reduction
 * table red(x, w) giving the coordinates of x + w in C_w.
 *
 * Elements are kept in canonical form: a support idempotent w together with
 * strictly positive coefficients on R_w.
 */
#pragma once

#include "ecc/xreal.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ecc {

using IdemId = std::size_t;
using GenId = std::size_t;
using Coeffs = std::map<GenId, Rational>;

struct GeneratorSpec {
    std::string id;
    std::string support;
    std::vector<std::string> below;
    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct ReductionSpec {
    std::string gen;
    std::string idem;
    std::map<std::string, Rational> coords;
    friend bool operator==(const ReductionSpec&, const ReductionSpec&) = default;
};

/// Name-based description of a presentation, as read from a document.
struct ConeSpec {
    std::string description;
    std::vector<std::string> idempotents;
    std::vector<std::pair<std::string, std::string>> order;  // strict pairs a < b
    std::vector<GeneratorSpec> generators;
    std::map<std::string, std::vector<std::string>> rays;
    std::vector<ReductionSpec> reductions;  // entries may be omitted where forced
    friend bool operator==(const ConeSpec&, const ConeSpec&) = default;
};

/**
 * @brief Indexed presentation. Construction resolves names only; use
 * validate_presentation() to check the cone axioms.
 */
class ConePresentation {
public:
    /// Throws ValidationError on unknown or duplicate names.
    explicit ConePresentation(const ConeSpec& spec);

    [[nodiscard]] std::size_t idem_count() const { return idem_names_.size(); }
    [[nodiscard]] std::size_t gen_count() const { return gen_names_.size(); }
    [[nodiscard]] const std::string& idem_name(IdemId w) const { return idem_names_.at(w); }
    [[nodiscard]] const std::string& gen_name(GenId x) const { return gen_names_.at(x); }
    [[nodiscard]] IdemId idem(const std::string& name) const;
    [[nodiscard]] GenId gen(const std::string& name) const;
    [[nodiscard]] const std::string& description() const { return description_; }

    [[nodiscard]] bool leq(IdemId a, IdemId b) const { return leq_[a][b]; }
    [[nodiscard]] IdemId meet(IdemId a, IdemId b) const;
    [[nodiscard]] IdemId join(IdemId a, IdemId b) const;
    [[nodiscard]] bool has_meet(IdemId a, IdemId b) const { return meet_[a][b].has_value(); }
    [[nodiscard]] bool has_join(IdemId a, IdemId b) const { return join_[a][b].has_value(); }
    [[nodiscard]] IdemId top() const;
    [[nodiscard]] IdemId bot() const;
    [[nodiscard]] bool has_top() const { return top_.has_value(); }
    [[nodiscard]] bool has_bot() const { return bot_.has_value(); }

    [[nodiscard]] IdemId support(GenId x) const { return supp_[x]; }
    [[nodiscard]] bool below(GenId x, IdemId w) const { return below_[x][w]; }
    [[nodiscard]] const std::vector<GenId>& rays(IdemId w) const { return rays_[w]; }
    [[nodiscard]] bool is_ray(GenId x, IdemId w) const;
    /// Coordinates of x + w on R_w. Requires support(x) ≤ w.
    [[nodiscard]] const Coeffs& red(GenId x, IdemId w) const;
    [[nodiscard]] bool has_red(GenId x, IdemId w) const { return red_[x][w].has_value(); }

    /// O_w = {x : x ≰ w}.
    [[nodiscard]] std::vector<GenId> o_set(IdemId w) const;
    /// P_w = {x ∈ O_w : support(x) ≤ w}.
    [[nodiscard]] std::vector<GenId> p_set(IdemId w) const;
    /// P̃_w = P_w ∪ (X \ O_w) = {x : support(x) ≤ w}.
    [[nodiscard]] std::vector<GenId> p_tilde_set(IdemId w) const;

    /// Converts back to names; reductions are listed in full.
    [[nodiscard]] ConeSpec spec() const;

private:
    std::string description_;
    std::vector<std::string> idem_names_;
    std::vector<std::string> gen_names_;
    std::map<std::string, IdemId> idem_index_;
    std::map<std::string, GenId> gen_index_;
    std::vector<std::vector<bool>> leq_;
    std::vector<std::vector<std::optional<IdemId>>> meet_;
    std::vector<std::vector<std::optional<IdemId>>> join_;
    std::optional<IdemId> top_;
    std::optional<IdemId> bot_;
    std::vector<IdemId> supp_;
    std::vector<std::vector<bool>> below_;
    std::vector<std::vector<GenId>> rays_;
    std::vector<std::vector<std::optional<Coeffs>>> red_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Lattice laws, generator filters, ray conditions, reduction coherence and
/// the strong-connectedness witness condition; empty report means valid.
ValidationReport validate_presentation(const ConePresentation& p);

/// Throws ValidationError listing every violation.
void require_valid(const ConePresentation& p);

/// Element in canonical form: support w plus positive coefficients on R_w.
struct ConeElement {
    IdemId support = 0;
    Coeffs coeffs;
    friend bool operator==(const ConeElement&, const ConeElement&) = default;
};

/// Throws PreconditionError unless y is canonical for p.
void check_element(const ConePresentation& p, const ConeElement& y);

ConeElement idempotent_element(const ConePresentation& p, IdemId w);
ConeElement generator_element(const ConePresentation& p, GenId x);
ConeElement zero_element(const ConePresentation& p);

/// Canonical form of w + Σ raw(x)·x (raw values ≥ 0; zeros ignored).
ConeElement canonicalize(const ConePresentation& p, IdemId w, const Coeffs& raw);
ConeElement cone_add(const ConePresentation& p, const ConeElement& y, const ConeElement& z);
/// t·y for t ∈ (0,∞]; ∞·y is the least idempotent above y. t = 0 is rejected.
ConeElement scalar_mul(const ConePresentation& p, const ExtScalar& t, const ConeElement& y);
bool cone_leq(const ConePresentation& p, const ConeElement& y, const ConeElement& z);

IdemId idem_meet(const ConePresentation& p, IdemId a, IdemId b);
IdemId idem_join(const ConePresentation& p, IdemId a, IdemId b);

/// Result of an element meet or join: empty value when verification failed.
struct LatticeOutcome {
    std::optional<ConeElement> value;
    std::string diagnostic;
};

/// Greatest lower bound by exact per-coordinate linear programs, verified.
LatticeOutcome element_meet(const ConePresentation& p, const ConeElement& y, const ConeElement& z);
/// Least upper bound over candidate supports, verified.
LatticeOutcome element_join(const ConePresentation& p, const ConeElement& y, const ConeElement& z);

std::string to_string(const ConePresentation& p, const ConeElement& y);

}  // namespace ecc
