#include "flux/twist.hpp"

#include "flux/novikov.hpp"

namespace flux {

template struct Cone<Rat>;
template struct Cone<Novikov<Rat>>;
template EndoRing<Rat> cone_endo_ring(const Cone<Rat>&);
template EndoRing<Novikov<Rat>> cone_endo_ring(const Cone<Novikov<Rat>>&);
template SplitInfo<Rat> splits(const Cone<Rat>&);
template SplitInfo<Novikov<Rat>> splits(const Cone<Novikov<Rat>>&);
template std::vector<ConeElem<Rat>> lift_idempotent(const Cone<Rat>&, const ConeElem<Rat>&, int);
template std::vector<ConeElem<Novikov<Rat>>> lift_idempotent(const Cone<Novikov<Rat>>&,
                                                             const ConeElem<Novikov<Rat>>&, int);

}  // namespace flux
