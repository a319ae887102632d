#pragma once

// The worked reduction examples. The same data ships as JSON under
// fixtures/ for the command line tool.

#include <vector>

#include "fmlab/action.hpp"
#include "fmlab/fp.hpp"
#include "fmlab/supports.hpp"

namespace fmlab::fixtures {

struct ReductionFixture {
  ReductionInput input;
  std::vector<Vector> extra;  // B
};

/// {((j, e0), (j, e1)) : j in F_p}
inline HFObject identity_matching(Prime p) {
  std::vector<HFObject> pairs;
  for (Residue j = 0; j < p.value(); ++j) {
    pairs.push_back(HFObject::tuple({atom_object(j, Vector::unit(p, 0)), atom_object(j, Vector::unit(p, 1))}));
  }
  return HFObject::set(std::move(pairs));
}

/// x = identity matching of U_e0 with U_e1, X = its orbit under the full
/// horizon-2 group, A = {}, B = [e0, e1].
inline ReductionFixture matching(Prime p) {
  const HFObject x = identity_matching(p);
  const HFObject xs = HFObject::set(orbit(x, Subgroup::full(p, 2)));
  return {ReductionInput{p, 2, x, xs, {}}, {Vector::unit(p, 0), Vector::unit(p, 1)}};
}

}  // namespace fmlab::fixtures
