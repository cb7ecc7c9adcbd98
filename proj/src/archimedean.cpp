#include "circlekit/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <sstream>

#include "circlekit/detail/hash.hpp"
#include "circlekit/detail/slicer.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/expsums.hpp"
#include "circlekit/parallel.hpp"

namespace circlekit {

namespace {

constexpr double kPi = std::numbers::pi;

// Sum of g(f(gamma), |gamma|^2) over the midpoint grid of [0,1]^n with M nodes
// per axis. Blocks over the first coordinate are merged in index order.
template <class Acc, class G>
Acc grid_sum(const Form& form, int M, G g)
{
    const detail::AxisSlicer slicer(form);
    const std::size_t prefix_len = slicer.prefix_size();
    std::vector<double> nodes(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) nodes[static_cast<std::size_t>(i)] = (i + 0.5) / M;

    auto sweep_lines = [&](Acc& acc, std::vector<std::size_t>& idx, std::size_t free_from) {
        std::vector<double> prefix(prefix_len);
        std::vector<double> coeffs;
        auto tail = std::span<std::size_t>(idx).subspan(free_from);
        for (auto& v : tail) v = 0;
        do {
            double norm2 = 0;
            for (std::size_t j = 0; j < prefix_len; ++j) {
                prefix[j] = nodes[idx[j]];
                norm2 += prefix[j] * prefix[j];
            }
            slicer.coefficients<double>(prefix, coeffs);
            for (double t : nodes) acc += g(detail::horner<double>(coeffs, t), norm2 + t * t);
        } while (detail::next_tuple<std::size_t>(tail, 0, static_cast<std::size_t>(M) - 1));
    };

    if (prefix_len == 0) {
        Acc acc{};
        std::vector<std::size_t> idx;
        sweep_lines(acc, idx, 0);
        return acc;
    }
    const auto width = static_cast<std::uint64_t>(M);
    const std::uint64_t blocks = detail::block_count(width);
    auto partial = parallel_map<Acc>(blocks, [&](std::size_t b) {
        const auto range = detail::block_range(width, blocks, b);
        Acc acc{};
        std::vector<std::size_t> idx(prefix_len);
        for (std::uint64_t i = range.begin; i < range.end; ++i) {
            idx[0] = static_cast<std::size_t>(i);
            sweep_lines(acc, idx, 1);
        }
        return acc;
    });
    Acc total{};
    for (const auto& part : partial) total += part;
    return total;
}

// Pseudo-random sample sum; `first` receives the sum over the first half.
template <class Acc, class G>
Acc sample_sum(const Form& form, std::uint64_t samples, std::uint64_t seed, Acc& first, G g)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(form.variables()));
    Acc total{};
    for (std::uint64_t s = 0; s < 2 * samples; ++s) {
        double norm2 = 0;
        for (auto& v : x) {
            v = unit(rng);
            norm2 += v * v;
        }
        total += g(evaluate_real(form, x), norm2);
        if (s + 1 == samples) first = total;
    }
    return total;
}

// Box means at the base and doubled resolution.
template <class Acc, class G>
std::pair<Acc, Acc> box_means(const Form& form, const QuadratureSpec& quad, bool& monte_carlo, G g)
{
    const int n = form.variables();
    monte_carlo = n > kMaxTensorDimension;
    if (monte_carlo) {
        quad.budget.require(2.0L * quad.samples, "box quadrature (sampled)");
        Acc first{};
        Acc all = sample_sum<Acc>(form, quad.samples, quad.seed, first, g);
        return {first / static_cast<double>(quad.samples), all / (2.0 * static_cast<double>(quad.samples))};
    }
    quad.budget.require_power(2 * static_cast<std::uint64_t>(quad.M), static_cast<unsigned>(n), "box quadrature");
    const double coarse_nodes = std::pow(static_cast<double>(quad.M), n);
    const double fine_nodes = std::pow(2.0 * quad.M, n);
    return {grid_sum<Acc>(form, quad.M, g) / coarse_nodes, grid_sum<Acc>(form, 2 * quad.M, g) / fine_nodes};
}

void require_positive(double A, double X)
{
    if (!(A > 0) || !(X > 0)) throw ArgumentError("A and X must be positive");
}

} // namespace

double fejer_weight(double beta, double zeta)
{
    if (!(zeta > 0)) throw ArgumentError("zeta must be positive");
    const double x = kPi * zeta * beta;
    if (std::fabs(x) < 1e-8) return zeta * (1.0 - x * x / 3.0);
    const double s = std::sin(x) / x;
    return zeta * s * s;
}

double fejer_hat(double xi, double zeta)
{
    if (!(zeta > 0)) throw ArgumentError("zeta must be positive");
    return std::max(0.0, 1.0 - std::fabs(xi) / zeta);
}

FejerParams FejerParams::from_w(double w)
{
    if (!(w > 0)) throw ArgumentError("w must be positive");
    return {std::pow(w, -5.0), w};
}

FejerParams FejerParams::from_zeta(double zeta, double w)
{
    if (!(zeta > 0)) throw ArgumentError("zeta must be positive");
    return {zeta, w};
}

void QuadratureSpec::validate() const
{
    if (M < 4) throw ArgumentError("quadrature needs at least 4 nodes per axis");
    if (samples < 1) throw ArgumentError("sample count must be positive");
}

IntegralEstimate singular_integral(const Form& form, double A, double X, const FejerParams& fejer,
                                   const QuadratureSpec& quad)
{
    require_positive(A, X);
    quad.validate();
    const double zeta = fejer.zeta;
    if (!(zeta > 0)) throw ArgumentError("zeta must be positive");

    IntegralEstimate out;
    auto [coarse, fine] = box_means<double>(form, quad, out.monte_carlo,
                                            [A, zeta](double f, double) { return fejer_hat(f / A, zeta); });
    const double scale = std::pow(X, form.variables() - form.degree()) / (A * zeta);
    out.value = scale * coarse;
    out.refined = scale * fine;
    out.gap = std::fabs(out.value - out.refined);
    out.extrapolated = out.refined + (out.refined - out.value) / 3.0;
    return out;
}

OscillatoryEstimate singular_integral_w(const Form& form, double A, double X, double w, const QuadratureSpec& quad,
                                        bool reflect)
{
    require_positive(A, X);
    quad.validate();
    if (!(w > 0)) throw ArgumentError("w must be positive");

    // |A^-1 f| <= |a|_1 / A on the unit box; aim for 32 beta nodes per oscillation.
    const double tmax = static_cast<double>(form.l1_norm()) / A;
    int K = std::max(quad.M, static_cast<int>(std::ceil(32.0 * w * tmax)));
    K += K % 2;

    auto beta_grid = [w, reflect](int nodes) {
        const int half = nodes / 2;
        const double h = 2.0 * w / nodes;
        std::vector<double> beta;
        beta.reserve(static_cast<std::size_t>(nodes));
        for (int k = half - 1; k >= 0; --k) beta.push_back(-(k + 0.5) * h);
        for (int k = 0; k < half; ++k) beta.push_back((k + 0.5) * h);
        if (reflect) std::reverse(beta.begin(), beta.end());
        return beta;
    };

    using C = std::complex<double>;
    auto outer = [A](const std::vector<double>& beta, double weight) {
        return [A, &beta, weight](double f, double) {
            const double t = f / A;
            C s = 0;
            for (double b : beta) {
                const double phase = 2.0 * kPi * b * t;
                s += C(std::cos(phase), std::sin(phase));
            }
            return s * weight;
        };
    };
    const auto coarse_beta = beta_grid(K);
    const auto fine_beta = beta_grid(2 * K);

    const int n = form.variables();
    OscillatoryEstimate out;
    out.beta_nodes = K;
    bool mc = false;
    // Each pass pairs one box resolution with one beta resolution.
    C coarse;
    C fine;
    if (n > kMaxTensorDimension) {
        coarse = box_means<C>(form, quad, mc, outer(coarse_beta, 2.0 * w / K)).first;
        fine = box_means<C>(form, quad, mc, outer(fine_beta, w / K)).second;
    } else {
        quad.budget.require(std::pow(2.0L * quad.M, n) * 2 * K, "singular_integral_w");
        coarse = grid_sum<C>(form, quad.M, outer(coarse_beta, 2.0 * w / K)) / std::pow(static_cast<double>(quad.M), n);
        fine = grid_sum<C>(form, 2 * quad.M, outer(fine_beta, w / K)) / std::pow(2.0 * quad.M, n);
    }
    const double scale = std::pow(X, n - form.degree()) / A;
    out.value = coarse * scale;
    out.refined = fine * scale;
    out.gap = std::abs(out.value - out.refined);
    if (std::fabs(out.value.imag()) > 1e-6 * std::abs(out.value) + 1e-300) {
        std::ostringstream msg;
        msg << "imaginary residue " << out.value.imag() << " exceeds 1e-6 of |J(w)| = " << std::abs(out.value);
        throw NumericalInconsistency(msg.str());
    }
    return out;
}

TauEstimate tau(const Form& form, double b, const QuadratureSpec& quad)
{
    if (!(b > 0)) throw ArgumentError("b must be positive");
    quad.validate();
    const double bound = form.euclidean_norm() / b;
    TauEstimate out;
    auto [coarse, fine] = box_means<double>(form, quad, out.monte_carlo, [bound](double f, double norm2) {
        return std::fabs(f) <= std::sqrt(norm2) * bound ? 1.0 : 0.0;
    });
    out.full = coarse == 1.0;
    out.value = b * coarse;
    out.refined = b * fine;
    out.gap = std::fabs(out.value - out.refined);
    return out;
}

namespace {

std::vector<double> normalized(std::span<const double> x)
{
    double norm = 0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    std::vector<double> out(x.begin(), x.end());
    for (auto& v : out) v /= norm;
    return out;
}

std::vector<double> to_real(std::span<const std::int64_t> x) { return {x.begin(), x.end()}; }

void canonicalize_sign(std::vector<double>& x)
{
    for (double v : x) {
        if (v == 0) continue;
        if (v < 0)
            for (auto& u : x) u = -u;
        return;
    }
}

// Root of f on the normalized chord from u to v, f(u) and f(v) of opposite sign.
std::vector<double> bisect_chord(const Form& form, const std::vector<double>& u, const std::vector<double>& v)
{
    auto point = [&](double s) {
        std::vector<double> x(u.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = (1 - s) * u[i] + s * v[i];
        return normalized(x);
    };
    double lo = 0;
    double hi = 1;
    const bool lo_positive = evaluate_real(form, u) > 0;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = evaluate_real(form, point(mid));
        if (f == 0) return point(mid);
        if ((f > 0) == lo_positive) lo = mid;
        else hi = mid;
    }
    return point(0.5 * (lo + hi));
}

} // namespace

SolubilityCertificate real_soluble(const Form& form, int grid, double margin)
{
    if (grid < 8) throw ArgumentError("real_soluble needs grid >= 8");
    const auto n = static_cast<std::size_t>(form.variables());
    const int d = form.degree();
    SolubilityCertificate cert;
    cert.verdict = Verdict::Undetermined;

    if (form.is_zero()) {
        cert.verdict = Verdict::Soluble;
        cert.kind = WitnessKind::IntegerZero;
        cert.witness.assign(n, 0);
        cert.witness[0] = 1;
        cert.real_witness = to_real(cert.witness);
        cert.note = "zero form";
        return cert;
    }

    // Largest g <= grid keeping the sample count near 4e6.
    std::int64_t g = grid;
    while (g > 1 && std::pow(2.0 * static_cast<double>(g) + 1.0, static_cast<double>(n)) > 4e6) --g;
    cert.level = static_cast<unsigned>(g);

    std::optional<IntVector> zero;
    std::optional<IntVector> positive;
    std::optional<IntVector> negative;
    double min_abs = std::numeric_limits<double>::infinity();
    IntVector x(n, -g);
    do {
        if (std::none_of(x.begin(), x.end(), [g](std::int64_t v) { return v == g || v == -g; })) continue;
        const i128 f = evaluate(form, x);
        if (f == 0) {
            zero = x;
            break;
        }
        if (f > 0 && !positive) positive = x;
        if (f < 0 && !negative) negative = x;
        double norm2 = 0;
        for (auto v : x) norm2 += static_cast<double>(v) * static_cast<double>(v);
        min_abs = std::min(min_abs, std::fabs(static_cast<double>(f)) / std::pow(norm2, d / 2.0));
    } while (detail::next_tuple<std::int64_t>(x, -g, g));

    if (zero) {
        cert.verdict = Verdict::Soluble;
        cert.kind = WitnessKind::IntegerZero;
        i128 common = 0;
        for (auto v : *zero) common = gcd(common, v);
        const auto lead = *std::find_if(zero->begin(), zero->end(), [](std::int64_t v) { return v != 0; });
        if (lead < 0) common = -common;
        for (auto& v : *zero) v = static_cast<std::int64_t>(v / common);
        cert.witness = *zero;
        cert.real_witness = normalized(to_real(*zero));
        canonicalize_sign(cert.real_witness);
        return cert;
    }
    if (positive && negative) {
        auto u = normalized(to_real(*positive));
        auto v = normalized(to_real(*negative));
        double gap2 = 0;
        for (std::size_t i = 0; i < n; ++i) gap2 += (u[i] + v[i]) * (u[i] + v[i]);
        if (gap2 < 1e-18) {
            // Antipodal pair: route through a unit vector orthogonal to u.
            const auto j = static_cast<std::size_t>(std::min_element(u.begin(), u.end(), [](double p, double q) {
                                                        return std::fabs(p) < std::fabs(q);
                                                    }) - u.begin());
            std::vector<double> y(n, 0.0);
            y[j] = 1;
            for (std::size_t i = 0; i < n; ++i) y[i] -= u[j] * u[i];
            y = normalized(y);
            const double fy = evaluate_real(form, y);
            if (fy == 0) {
                cert.real_witness = y;
                u = v = y;
            } else if (fy > 0) {
                u = y;
            } else {
                v = y;
            }
        }
        cert.verdict = Verdict::Soluble;
        cert.kind = WitnessKind::SignChange;
        if (cert.real_witness.empty()) cert.real_witness = bisect_chord(form, u, v);
        canonicalize_sign(cert.real_witness);
        const double residual = std::fabs(evaluate_real(form, cert.real_witness));
        if (residual >= 1e-6 * form.euclidean_norm()) cert.note = "bisection residual above 1e-6 |a|";
        return cert;
    }

    // One sign everywhere on the samples: certify with a Lipschitz bound.
    const double lipschitz = static_cast<double>(d) * static_cast<double>(form.l1_norm());
    const double spacing = std::sqrt(static_cast<double>(n) - 1.0) / (2.0 * static_cast<double>(g));
    const double certified = min_abs - lipschitz * spacing;
    std::ostringstream note;
    note << "min |f| on samples " << min_abs << ", Lipschitz margin " << lipschitz * spacing;
    cert.note = note.str();
    if (n == 1 || (min_abs > margin * form.euclidean_norm() && certified > 0)) cert.verdict = Verdict::Insoluble;
    return cert;
}

} // namespace circlekit
