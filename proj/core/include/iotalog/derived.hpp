#ifndef IOTALOG_DERIVED_HPP
#define IOTALOG_DERIVED_HPP

// Derived rule constructions: proof fragments that emulate one system's
// description rules inside another, using only the host system's
// primitives. The fragment's judgment equals the emulated rule's schema
// instance, with exactly the undischarged assumptions of its open
// premises.
//
// Template premise shapes (t is read off the premises where possible):
//
//   IotaITInLL    [ ex!t ; Xi: F_z^x from {z=t}@label ;
//                   Pi: z=t from {F_z^x, ex!z}@label ]      -> iota x F = t
//   IotaIRInT     [ F_t^x ; ex!t ;
//                   Pi: z=t from {F_z^x, ex!z}@label ]      -> iota x F = t
//   IotaE1RInT    [ major: iota x F = t ;
//                   Pi: C from {F_z^x, z=t, ex!z}@label ]   -> C
//   IotaE2RInT    [ major: iota x F = t ; ex!t1 ; ex!t2 ;
//                   F_t1^x ; F_t2^x ]                       -> t1 = t2
//
// IotaIRInT omits the redundant identity premise of the restricted
// introduction rule; a suitable t=t premise is always derivable from ex!t
// by eqI (see derive_identity_premise).

#include <optional>
#include <vector>

#include "iotalog/kernel.hpp"

namespace iotalog {

enum class DerivedRule { IotaITInLL, IotaIRInT, IotaE1RInT, IotaE2RInT };

struct DerivedInstance {
    DerivedRule rule;
    std::vector<Proof> premises;
    // The description's bound variable and restrictor; required for
    // IotaITInLL and IotaIRInT, read off the major premise otherwise.
    std::optional<std::string> bound_var;
    std::optional<Formula> restrictor;
    std::optional<std::string> eigen;  // the z of the premises
    std::optional<std::string> label;  // the premise discharge label
};

// Throws CheckException with kind PremiseShapeMismatch when the premises
// do not fit the template.
Proof expand_derived(const DerivedInstance& instance);

// The convenience derivation of the redundant iotaI^R identity premise:
// t=t from a proof of ex!t.
Proof derive_identity_premise(const Proof& exists_t);

// Tennant's elimination rules reproduced inside INF-LL: iotaE1T/iotaE2T
// via Lambert's Law and the biconditional rules, iotaE3T as an atomic
// denotation step. Premises as in the corresponding T rules.
Proof derive_iota_e1t_in_ll(const Proof& major, const Proof& minor);
Proof derive_iota_e2t_in_ll(const Proof& major, const Proof& f_u, const Proof& ex_u);
Proof derive_iota_e3t_in_ll(const Proof& major);

// iotaE3T replayed as an AD step on the same premise (the two judgments
// coincide).
Proof iota_e3t_as_ad(const Proof& major);

}  // namespace iotalog

#endif  // IOTALOG_DERIVED_HPP
