#pragma once

// The bundled test configurations, mirroring configs/*.json.

#include "gtrep/pyramid.hpp"
#include "gtrep/rational.hpp"

namespace testcfg {

using gtrep::HighestWeightSpec;
using gtrep::Pyramid;
using gtrep::Rat;

inline HighestWeightSpec p1() {
    return HighestWeightSpec::validate(Pyramid({1}), {{Rat(1, 3)}});
}

inline HighestWeightSpec p11() {
    return HighestWeightSpec::validate(Pyramid({1, 1}), {{Rat(1)}, {Rat(0)}});
}

inline HighestWeightSpec p12() {
    return HighestWeightSpec::validate(Pyramid({1, 2}),
                                       {{Rat(1)}, {Rat(0), Rat(1, 2)}});
}

inline HighestWeightSpec p22() {
    return HighestWeightSpec::validate(
        Pyramid({2, 2}), {{Rat(2), Rat(1, 2)}, {Rat(0), Rat(-1, 2)}});
}

inline HighestWeightSpec p111() {
    return HighestWeightSpec::validate(Pyramid({1, 1, 1}),
                                       {{Rat(2)}, {Rat(1)}, {Rat(0)}});
}

inline HighestWeightSpec p122() {
    return HighestWeightSpec::validate(
        Pyramid({1, 2, 2}),
        {{Rat(1)}, {Rat(0), Rat(1, 2)}, {Rat(-1), Rat(-1, 2)}});
}

} // namespace testcfg
