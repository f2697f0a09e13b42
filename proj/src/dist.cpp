#include "epnet/dist.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "epnet/errors.hpp"

namespace epnet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double gaussian_mass(const TruncatedGaussian& g) {
    return normal_cdf((g.hi - g.mu) / g.sigma) - normal_cdf((g.lo - g.mu) / g.sigma);
}

template <class F>
double integrate(F f, double lo, double hi) {
    if (hi <= lo) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-12);
}

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

}  // namespace

// --- construction -----------------------------------------------------------

ScpDistribution uniform(double a, double b) {
    if (!(in_unit(a) && in_unit(b))) throw InvalidArgument("uniform bounds must lie in [0, 1]");
    if (!(a < b)) throw InvalidArgument("uniform: a < b violated");
    return {Uniform{a, b}};
}

ScpDistribution haar() { return {HaarQubitPair{}}; }

ScpDistribution truncated_gaussian(double mu, double sigma, double lo, double hi) {
    if (!(in_unit(lo) && in_unit(hi) && lo < hi))
        throw InvalidArgument("gauss: need 0 <= lo < hi <= 1");
    if (!(sigma > 0.0) || !std::isfinite(mu)) throw InvalidArgument("gauss: sigma must be > 0");
    TruncatedGaussian g{mu, sigma, lo, hi};
    if (!(gaussian_mass(g) > 1e-9))
        throw InvalidArgument("gauss: truncation window carries no probability mass");
    return {g};
}

ScpDistribution bimodal(double p_low, double p_high, double weight_low) {
    if (!(in_unit(p_low) && in_unit(p_high))) throw InvalidArgument("bimodal values must lie in [0, 1]");
    if (!in_unit(weight_low)) throw InvalidArgument("bimodal weight must lie in [0, 1]");
    return {Bimodal{p_low, p_high, weight_low}};
}

ScpDistribution degenerate(double p) {
    if (!in_unit(p)) throw InvalidArgument("const: p must lie in [0, 1]");
    return {Degenerate{p}};
}

ScpDistribution min_transform(const ScpDistribution& dist) {
    return {MinOfTwo{std::make_shared<const ScpDistribution>(dist)}};
}

// --- queries ----------------------------------------------------------------

double sample(const ScpDistribution& dist, Rng& rng) {
    return std::visit(
        overloaded{
            [&](const Uniform& u) { return u.a + (u.b - u.a) * rng.uniform(); },
            [&](const HaarQubitPair&) {
                // Inverse CDF in lambda2-space, then p = 2 lambda2.
                const double lambda2 = (1.0 - std::cbrt(1.0 - rng.uniform())) / 2.0;
                return 2.0 * lambda2;
            },
            [&](const TruncatedGaussian& g) {
                for (;;) {
                    const double x = g.mu + g.sigma * rng.normal();
                    if (x >= g.lo && x <= g.hi) return x;
                }
            },
            [&](const Bimodal& b) { return rng.uniform() < b.weight_low ? b.p_low : b.p_high; },
            [&](const Degenerate& d) { return d.p; },
            [&](const MinOfTwo& m) {
                const double x1 = sample(*m.inner, rng);
                const double x2 = sample(*m.inner, rng);
                return std::min(x1, x2);
            },
        },
        dist.law);
}

double pdf(const ScpDistribution& dist, double x) {
    if (!in_unit(x)) throw InvalidArgument("pdf argument outside [0, 1]");
    return std::visit(
        overloaded{
            [&](const Uniform& u) { return (x >= u.a && x <= u.b) ? 1.0 / (u.b - u.a) : 0.0; },
            [&](const HaarQubitPair&) { return 3.0 * (1.0 - x) * (1.0 - x); },
            [&](const TruncatedGaussian& g) {
                if (x < g.lo || x > g.hi) return 0.0;
                return normal_pdf((x - g.mu) / g.sigma) / (g.sigma * gaussian_mass(g));
            },
            [&](const Bimodal&) -> double { throw NoDensity("bimodal law has no density"); },
            [&](const Degenerate&) -> double { throw NoDensity("degenerate law has no density"); },
            [&](const MinOfTwo& m) { return 2.0 * pdf(*m.inner, x) * (1.0 - cdf(*m.inner, x)); },
        },
        dist.law);
}

double cdf(const ScpDistribution& dist, double x) {
    return std::visit(
        overloaded{
            [&](const Uniform& u) { return std::clamp((x - u.a) / (u.b - u.a), 0.0, 1.0); },
            [&](const HaarQubitPair&) {
                const double t = std::clamp(1.0 - x, 0.0, 1.0);
                return 1.0 - t * t * t;
            },
            [&](const TruncatedGaussian& g) {
                if (x <= g.lo) return 0.0;
                if (x >= g.hi) return 1.0;
                const double lo = normal_cdf((g.lo - g.mu) / g.sigma);
                return std::clamp((normal_cdf((x - g.mu) / g.sigma) - lo) / gaussian_mass(g), 0.0, 1.0);
            },
            [&](const Bimodal& b) {
                double f = 0.0;
                if (x >= b.p_low) f += b.weight_low;
                if (x >= b.p_high) f += 1.0 - b.weight_low;
                return std::min(f, 1.0);
            },
            [&](const Degenerate& d) { return x >= d.p ? 1.0 : 0.0; },
            [&](const MinOfTwo& m) {
                const double s = 1.0 - cdf(*m.inner, x);
                return 1.0 - s * s;
            },
        },
        dist.law);
}

std::pair<double, double> support(const ScpDistribution& dist) {
    return std::visit(overloaded{
                          [](const Uniform& u) { return std::pair{u.a, u.b}; },
                          [](const HaarQubitPair&) { return std::pair{0.0, 1.0}; },
                          [](const TruncatedGaussian& g) { return std::pair{g.lo, g.hi}; },
                          [](const Bimodal& b) {
                              return std::pair{std::min(b.p_low, b.p_high), std::max(b.p_low, b.p_high)};
                          },
                          [](const Degenerate& d) { return std::pair{d.p, d.p}; },
                          [](const MinOfTwo& m) { return support(*m.inner); },
                      },
                      dist.law);
}

bool is_discrete(const ScpDistribution& dist) {
    return std::visit(overloaded{
                          [](const Bimodal&) { return true; },
                          [](const Degenerate&) { return true; },
                          [](const MinOfTwo& m) { return is_discrete(*m.inner); },
                          [](const auto&) { return false; },
                      },
                      dist.law);
}

std::vector<std::pair<double, double>> atoms(const ScpDistribution& dist) {
    if (!is_discrete(dist)) throw NoDensity("continuous law has no atoms");
    std::vector<std::pair<double, double>> out;
    std::visit(overloaded{
                   [&](const Bimodal& b) {
                       std::map<double, double> m;
                       m[b.p_low] += b.weight_low;
                       m[b.p_high] += 1.0 - b.weight_low;
                       for (auto [v, w] : m)
                           if (w > 0.0) out.emplace_back(v, w);
                   },
                   [&](const Degenerate& d) { out.emplace_back(d.p, 1.0); },
                   [&](const MinOfTwo& m) {
                       // P(min = v_i) = S(v_{i-1})^2 - S(v_i)^2 with S the inner survival function.
                       double prev_survival = 1.0;
                       for (auto [v, w] : atoms(*m.inner)) {
                           const double survival = std::max(0.0, prev_survival - w);
                           const double mass = prev_survival * prev_survival - survival * survival;
                           if (mass > 0.0) out.emplace_back(v, mass);
                           prev_survival = survival;
                       }
                   },
                   [](const auto&) {},
               },
               dist.law);
    return out;
}

double mean(const ScpDistribution& dist) {
    if (is_discrete(dist)) {
        double m = 0.0;
        for (auto [v, w] : atoms(dist)) m += v * w;
        return m;
    }
    if (const auto* u = std::get_if<Uniform>(&dist.law)) return 0.5 * (u->a + u->b);
    if (std::holds_alternative<HaarQubitPair>(dist.law)) return 0.25;
    if (const auto* m = std::get_if<MinOfTwo>(&dist.law)) {
        if (const auto* u = std::get_if<Uniform>(&m->inner->law))
            return 0.5 * (u->a + u->b) - (u->b - u->a) / 6.0;
    }
    // E[X] = lo + integral of the survival function over the support.
    const auto [lo, hi] = support(dist);
    return lo + integrate([&](double x) { return 1.0 - cdf(dist, x); }, lo, hi);
}

double second_moment(const ScpDistribution& dist) {
    if (is_discrete(dist)) {
        double m = 0.0;
        for (auto [v, w] : atoms(dist)) m += v * v * w;
        return m;
    }
    if (const auto* u = std::get_if<Uniform>(&dist.law))
        return (u->a * u->a + u->a * u->b + u->b * u->b) / 3.0;
    // E[X^2] = lo^2 + integral of 2x S(x) over the support.
    const auto [lo, hi] = support(dist);
    return lo * lo + integrate([&](double x) { return 2.0 * x * (1.0 - cdf(dist, x)); }, lo, hi);
}

DistributionSummary summarize(const ScpDistribution& dist) {
    const double width = std::visit(overloaded{
                                        [](const Uniform& u) { return u.b - u.a; },
                                        [](const TruncatedGaussian& g) { return g.hi - g.lo; },
                                        [](const Bimodal& b) { return std::abs(b.p_high - b.p_low); },
                                        [](const Degenerate&) { return 0.0; },
                                        [&](const auto&) {
                                            const auto [lo, hi] = support(dist);
                                            return hi - lo;
                                        },
                                    },
                                    dist.law);
    const double m = mean(dist);
    return {m, std::max(second_moment(dist), m * m), width};
}

// --- spec strings -----------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text, std::string_view key) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw InvalidArgument("bad number '" + std::string(text) + "' for " + std::string(key));
    return value;
}

std::map<std::string, double> parse_params(std::string_view body, std::initializer_list<std::string_view> allowed,
                                           std::string_view family) {
    std::map<std::string, double> params;
    if (trim(body).empty()) return params;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view item = trim(body.substr(0, comma));
        body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw InvalidArgument("expected key=value in " + std::string(family) + " spec, got '" +
                                  std::string(item) + "'");
        const std::string key(trim(item.substr(0, eq)));
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw InvalidArgument("unknown parameter '" + key + "' for " + std::string(family));
        if (params.contains(key)) throw InvalidArgument("duplicate parameter '" + key + "'");
        params[key] = parse_number(item.substr(eq + 1), key);
    }
    return params;
}

double required(const std::map<std::string, double>& params, const std::string& key, std::string_view family) {
    auto it = params.find(key);
    if (it == params.end())
        throw InvalidArgument(std::string(family) + " spec needs '" + key + "'");
    return it->second;
}

double optional(const std::map<std::string, double>& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

ScpDistribution parse_distribution(std::string_view spec) {
    spec = trim(spec);
    if (spec.starts_with("min2(")) {
        if (!spec.ends_with(")")) throw InvalidArgument("min2(...) is missing ')'");
        return min_transform(parse_distribution(spec.substr(5, spec.size() - 6)));
    }
    const auto colon = spec.find(':');
    const std::string_view family = spec.substr(0, colon);
    const std::string_view body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    if (family == "haar") {
        if (!trim(body).empty()) throw InvalidArgument("haar takes no parameters");
        return haar();
    }
    if (family == "uniform") {
        const auto p = parse_params(body, {"a", "b"}, family);
        return uniform(required(p, "a", family), required(p, "b", family));
    }
    if (family == "gauss") {
        const auto p = parse_params(body, {"mu", "sigma", "lo", "hi"}, family);
        const double lo = optional(p, "lo", 0.0);
        const double hi = optional(p, "hi", 1.0);
        return truncated_gaussian(optional(p, "mu", 0.5 * (lo + hi)), optional(p, "sigma", (hi - lo) / 4.0), lo, hi);
    }
    if (family == "bimodal") {
        const auto p = parse_params(body, {"lo", "hi", "wlo"}, family);
        return bimodal(required(p, "lo", family), required(p, "hi", family), optional(p, "wlo", 0.5));
    }
    if (family == "const") {
        const auto p = parse_params(body, {"p"}, family);
        return degenerate(required(p, "p", family));
    }
    throw InvalidArgument("unknown distribution family '" + std::string(family) + "'");
}

std::string to_string(const ScpDistribution& dist) {
    const auto f = format_double;
    return std::visit(overloaded{
                          [&](const Uniform& u) { return "uniform:a=" + f(u.a) + ",b=" + f(u.b); },
                          [](const HaarQubitPair&) { return std::string("haar"); },
                          [&](const TruncatedGaussian& g) {
                              return "gauss:mu=" + f(g.mu) + ",sigma=" + f(g.sigma) + ",lo=" + f(g.lo) +
                                     ",hi=" + f(g.hi);
                          },
                          [&](const Bimodal& b) {
                              return "bimodal:lo=" + f(b.p_low) + ",hi=" + f(b.p_high) + ",wlo=" + f(b.weight_low);
                          },
                          [&](const Degenerate& d) { return "const:p=" + f(d.p); },
                          [](const MinOfTwo& m) { return "min2(" + to_string(*m.inner) + ")"; },
                      },
                      dist.law);
}

}  // namespace epnet
