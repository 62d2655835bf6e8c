#pragma once

#include "cfocus/inverse.hpp"
#include "cfocus/lyapunov.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cfocus {

struct Expectations {
    bool center_candidate = false;
    bool isochronous = false;
    bool uniformly_isochronous = false;
    bool hamiltonian = false;
    bool reversible = false;
    bool cauchy_riemann = false;
    // sign of the first nonzero constant, 0 when not asserted
    int focus_sign = 0;
    std::optional<DarbouxCandidate> darboux;

    std::vector<std::string> tags() const;
};

struct CatalogEntry {
    std::string name;
    std::vector<std::pair<std::string, Rational>> params;
    // As written in the source; see `clockwise`.
    PlanarField field;
    // True when the source writes the linear part as (y, -x).
    bool clockwise = false;
    Expectations expect;
    // The source states the family with apparent misprints; expectations are
    // left empty and `claimed` records what the source asserts.
    bool unverified_source = false;
    std::vector<std::string> claimed;
    std::vector<std::array<double, 2>> extra_equilibria;
    std::string summary;

    // Field with linear part (-y, x): `field`, reversed in time if clockwise.
    PlanarField analysis_field() const { return clockwise ? field.reversed() : field; }
};

struct ParamSpec {
    std::string name;
    // absent means the parameter is required
    std::optional<Rational> fallback;
};

struct FamilyInfo {
    std::string name;
    std::vector<ParamSpec> params;
    std::string summary;
};

std::vector<FamilyInfo> catalog_list();
CatalogEntry catalog_get(const std::string &name, const std::map<std::string, Rational> &params = {});

} // namespace cfocus
