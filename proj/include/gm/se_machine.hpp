#ifndef GM_SE_MACHINE_HPP
#define GM_SE_MACHINE_HPP

#include "gm/machine.hpp"

namespace gm {

// Translate every cast in an elaborated term to hypercoercion form.
TermPtr to_hyper_casts(const TermPtr& t);

// Space-efficient evaluation: casts are hypercoercions and two adjacent
// casts are composed before the inner subject is reduced, so no more than
// two cast nodes are ever stacked and coercion height never grows.
// max_hyper_height in the result reports the largest coercion height seen
// in any machine state.
MachineResult se_eval(const TermPtr& t, const MachineOpts& opts = {});

}  // namespace gm

#endif
