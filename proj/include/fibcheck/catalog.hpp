#pragma once

#include "fibcheck/twosided.hpp"

namespace fibcheck {

CatPtr cat_terminal();
CatPtr cat_chain(int n);  // [n]
CatPtr cat_parallel_pair();
CatPtr cat_walking_iso();
CatPtr cat_commutative_square();  // [1]×[1]
CatPtr cat_walking_span();
CatPtr cat_walking_cospan();
CatPtr cat_idempotent_monoid();  // delooping of the 2-element monoid {1, e}, e² = e
CatPtr cat_noncomm_total();      // total category of the noncomm fixture

// The hand-built candidate separating cocart-left ∧ cart-right from
// two-sided: bifibers 1,1,1,[1] over [1]×[1] with a non-invertible
// transport comparison.
TwoSidedInstance noncomm_instance();

// fixed seed list; every entry passes validate-style law checks
std::vector<CatPtr> seed_catalog();
CatPtr catalog_by_name(const std::string& name);  // throws UnknownObject

}  // namespace fibcheck
