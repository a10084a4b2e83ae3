#include "flux/curvering.hpp"

#include "flux/novikov.hpp"

namespace flux {

template struct CurveRing<Rat>;
template struct CurveElem<Rat>;
template struct CurveRing<Nov>;
template struct CurveElem<Nov>;

}  // namespace flux
