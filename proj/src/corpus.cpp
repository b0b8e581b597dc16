#include "sgprelax/corpus.hpp"

#include <stdexcept>

#include "sgprelax/parse.hpp"

namespace sgprelax {
namespace {

const char* kP1 = R"(problem P1
var x1 in [1, 10]
var x2 in [1, 10]
minimize 6*x1^2 + 4*x2^2 - 2.5*x1*x2
subject to
  c1: -x1*x2 <= -8
)";

const char* kP2 = R"(problem P2
var x1 in [40, 44]
var x2 in [40, 45]
var x3 in [60, 70]
var x4 in [0.1, 1.4]
minimize 168*x1*x2 + 3651.2*x1*x2*x3^(-1) + 40000*x4^(-1)
subject to
  c1: 1.0425*x1*x2^(-1) <= 1
  c2: 0.00035*x1*x2 <= 1
  c3: 1.25*x1^(-1)*x4 + 41.63*x1^(-1) <= 1
)";

const char* kP3 = R"(problem P3
var x1 in [0.1, 10]
var x2 in [0.1, 10]
var x3 in [0.1, 10]
var x4 in [0.1, 10]
var x5 in [0.1, 10]
var x6 in [0.1, 10]
var x7 in [0.1, 10]
var x8 in [0.1, 10]
minimize 0.4*x1^0.67*x7^(-0.67) + 0.4*x2^0.67*x8^(-0.67) + 10 - x1 - x2
subject to
  c1: 0.0588*x5*x7 + 0.1*x1 <= 1
  c2: 0.0588*x6*x8 + 0.1*x1 + 0.1*x2 <= 1
  c3: 4*x3*x5^(-1) + 2*x3^(-0.71)*x5^(-1) + 0.0588*x3^(-1.3)*x7 <= 1
  c4: 4*x4*x6^(-1) + 2*x4^(-0.71)*x6^(-1) + 0.0588*x4^(-1.3)*x8 <= 1
)";

const char* kP4 = R"(problem P4
var x1 in [100, 10000]
var x2 in [1000, 10000]
var x3 in [1000, 10000]
var x4 in [10, 1000]
var x5 in [10, 1000]
var x6 in [10, 1000]
var x7 in [10, 1000]
var x8 in [10, 1000]
minimize x1 + x2 + x3
subject to
  c1: 833.33252*x1^(-1)*x4*x6^(-1) - 833.333*x1^(-1)*x6^(-1) + 100*x6^(-1) <= 1
  c2: 1250*x2^(-1)*x5*x7^(-1) - 1250*x2^(-1)*x4*x7^(-1) + x4*x7^(-1) <= 1
  c3: 1250000*x3^(-1)*x8^(-1) - 2500*x3^(-1)*x5*x8^(-1) + x5*x8^(-1) <= 1
  c4: 0.0025*x4 + 0.0025*x6 <= 1
  c5: -0.0025*x4 + 0.0025*x5 + 0.0025*x7 <= 1
  c6: 0.01*x8 - 0.01*x5 <= 1
)";

const char* kP5 = R"(problem P5
var x1 in [1, 220]
var x2 in [1, 220]
var x3 in [1, 220]
minimize 5*x1 + 50000*x1^(-1) + 46.2*x2 + 72000*x2^(-1) + 144000*x3^(-1)
subject to
  c1: 4*x1^(-1) + 32*x2^(-1) + 120*x3^(-1) <= 1
)";

const char* kP6 = R"(problem P6
var x1 in [78, 102]
var x2 in [33, 45]
var x3 in [27, 45]
var x4 in [27, 45]
var x5 in [27, 45]
minimize 5.3578*x3^2 + 0.8357*x1*x5 + 37.2392*x1
subject to
  c1: 0.00002584*x3*x5 - 0.00006663*x2*x5 - 0.0000734*x1*x4 <= 1
  c2: 0.00085307*x2*x5 + 0.00009395*x1*x4 - 0.00033085*x3*x5 <= 1
  c3: 1330.3294*x2^(-1)*x5^(-1) - 0.42*x1*x5^(-1) - 0.30586*x2^(-1)*x3^2*x5^(-1) <= 1
  c4: 0.00024186*x2*x5 + 0.00010159*x1*x2 + 0.00007379*x3^2 <= 1
  c5: 2275.1327*x3^(-1)*x5^(-1) - 0.2668*x1*x5^(-1) - 0.40584*x4*x5^(-1) <= 1
  c6: 0.00029955*x3*x5 + 0.00007992*x1*x3 - 0.00012157*x3*x4 <= 1
)";

const char* kP7 = R"(problem P7
var x1 in [70, 150]
var x2 in [1, 30]
var x3 in [0.5, 21]
minimize 0.5*x1*x2^(-1) - x1 - 5*x2^(-1)
subject to
  c1: 0.01*x2*x3^(-1) + 0.01*x2 + 0.0005*x1*x3 <= 1
)";

const char* kP8 = R"(problem P8
var x1 in [0.5, 10]
var x2 in [0.5, 10]
var x3 in [0.5, 10]
minimize x1 + x2 + x3
subject to
  c1: -x1*x2 - x1*x3 <= -1
)";

}  // namespace

std::vector<SgpProblem> builtin_corpus() {
    std::vector<SgpProblem> out;
    auto add = [&](const char* text, double zstar) {
        SgpProblem p = parse_problem(text);
        p.known_optimum = zstar;
        out.push_back(std::move(p));
    };
    add(kP1, 58.38488);
    add(kP2, 468479.9969);
    add(kP3, 3.95116);
    add(kP4, 7049.24803);
    add(kP5, 6217.46549);
    add(kP6, 10122.85643);
    add(kP7, -83.66157);
    add(kP8, 2.0);

    out[0].known_point = std::vector<double>{2.5558, 3.1302};
    out[0].objective_nonneg_over_box = true;  // published with the P1 study
    out[7].known_point = std::vector<double>{1.0, 0.5, 0.5};
    return out;
}

SgpProblem builtin_problem(const std::string& name) {
    for (auto& p : builtin_corpus())
        if (p.name == name) return p;
    throw std::out_of_range("no builtin problem named '" + name + "'");
}

Interval p1_paper_aux_bounds() { return Interval{7.5, 750.0}; }

}  // namespace sgprelax
