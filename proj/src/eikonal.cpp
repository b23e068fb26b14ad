#include "tat/eikonal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tat {

GammaSides GammaSides::from_string(const std::string& s) {
    GammaSides g{false, false, false, false};
    for (char ch : s) switch (ch) {
            case 'S': case 's': g.south = true; break;
            case 'E': case 'e': g.east = true; break;
            case 'N': case 'n': g.north = true; break;
            case 'W': case 'w': g.west = true; break;
            case ',': break;
            default: throw std::invalid_argument("GammaSides: unknown side in \"" + s + "\"");
        }
    return g;
}

EikonalResult fast_sweep(const ScalarField& c, const Region& region,
                         const std::vector<unsigned char>& gamma_mask) {
    if (!c.grid.same_as(region.grid())) throw std::invalid_argument("fast_sweep: grid mismatch");
    const int ni = region.ni(), nj = region.nj();
    if (gamma_mask.size() != static_cast<std::size_t>(ni) * nj)
        throw std::invalid_argument("fast_sweep: gamma mask size mismatch");

    const auto& b = region.box();
    const double h = region.grid().h;
    constexpr double kInf = 1e30;

    std::vector<double> T(static_cast<std::size_t>(ni) * nj, kInf);
    std::vector<double> F(T.size());  // h * slowness
    bool have_gamma = false;
    for (int j = 0; j < nj; ++j)
        for (int i = 0; i < ni; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * ni + i;
            const double cv = c.at(b.i0 + i, b.j0 + j);
            if (!(cv > 0.0)) throw std::invalid_argument("fast_sweep: non-positive speed");
            F[k] = h / cv;
            if (gamma_mask[k]) {
                T[k] = 0.0;
                have_gamma = true;
            }
        }
    if (!have_gamma) throw std::invalid_argument("fast_sweep: empty gamma");

    auto at = [&](int i, int j) -> double {
        if (i < 0 || i >= ni || j < 0 || j >= nj) return kInf;
        return T[static_cast<std::size_t>(j) * ni + i];
    };

    int sweeps = 0;
    const int max_rounds = 200;
    for (int round = 0; round < max_rounds; ++round) {
        double max_change = 0.0;
        for (int ord = 0; ord < 4; ++ord) {
            const bool irev = (ord & 1) != 0, jrev = (ord & 2) != 0;
            ++sweeps;
            for (int jj = 0; jj < nj; ++jj) {
                const int j = jrev ? nj - 1 - jj : jj;
                for (int ii = 0; ii < ni; ++ii) {
                    const int i = irev ? ni - 1 - ii : ii;
                    const std::size_t k = static_cast<std::size_t>(j) * ni + i;
                    if (gamma_mask[k]) continue;
                    const double a = std::min(at(i - 1, j), at(i + 1, j));
                    const double bb = std::min(at(i, j - 1), at(i, j + 1));
                    const double f = F[k];
                    double t;
                    if (std::abs(a - bb) >= f)
                        t = std::min(a, bb) + f;
                    else
                        t = 0.5 * (a + bb + std::sqrt(2.0 * f * f - (a - bb) * (a - bb)));
                    if (t < T[k]) {
                        max_change = std::max(max_change, T[k] < kInf ? T[k] - t : kInf);
                        T[k] = t;
                    }
                }
            }
        }
        if (max_change < 1e-10) break;
        if (round + 1 == max_rounds)
            throw std::runtime_error("fast_sweep: no fixed point after 200 sweep rounds");
    }

    EikonalResult out;
    out.sweeps = sweeps;
    out.traveltime = ScalarField(region.grid(), kInf);
    for (int j = 0; j < nj; ++j)
        for (int i = 0; i < ni; ++i)
            out.traveltime.at(b.i0 + i, b.j0 + j) = T[static_cast<std::size_t>(j) * ni + i];
    return out;
}

EikonalResult fast_sweep(const ScalarField& c, const Region& region, const GammaSides& sides) {
    if (!sides.any()) throw std::invalid_argument("fast_sweep: empty gamma");
    const int ni = region.ni(), nj = region.nj();
    std::vector<unsigned char> mask(static_cast<std::size_t>(ni) * nj, 0);
    auto set = [&](int i, int j) { mask[static_cast<std::size_t>(j) * ni + i] = 1; };
    if (sides.south)
        for (int i = 0; i < ni; ++i) set(i, 0);
    if (sides.north)
        for (int i = 0; i < ni; ++i) set(i, nj - 1);
    if (sides.west)
        for (int j = 0; j < nj; ++j) set(0, j);
    if (sides.east)
        for (int j = 0; j < nj; ++j) set(ni - 1, j);
    return fast_sweep(c, region, mask);
}

double critical_time(const ScalarField& traveltime, const Region& region) {
    const auto& b = region.box();
    double m = 0.0;
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) m = std::max(m, traveltime.at(i, j));
    return m;
}

}  // namespace tat
