#include "stabma/multistable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "stabma/errors.hpp"
#include "synthesis_detail.hpp"

namespace stabma {
namespace {

void check_alpha_value(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 2.0, "alpha(t) must stay inside (0, 2)");
}

// Kernels whose definition depends on alpha are rebuilt per line.
KernelDescriptor kernel_for_alpha(const KernelDescriptor& kernel, double alpha) {
  if (kernel.family == KernelFamily::lfsn) return lfsn_kernel(alpha, kernel.param("H"));
  return kernel;
}

std::vector<std::string> advisories(const KernelDescriptor& kernel, const AlphaFunction& fn,
                                    double lo, double hi) {
  std::vector<std::string> notes;
  if (std::holds_alternative<TableAlpha>(fn))
    notes.emplace_back("alpha(t) is piecewise linear, not differentiable at its knots");
  if (kernel.family != KernelFamily::lfsn &&
      (!kernel.alpha_validity.contains(lo) || !kernel.alpha_validity.contains(hi)))
    notes.emplace_back("alpha range leaves the kernel's localisable interval " +
                       kernel.alpha_validity.describe());
  if (lo <= 1.0 && hi >= 1.0) notes.emplace_back("alpha range contains 1, where c(alpha) is undefined");
  return notes;
}

}  // namespace

void validate_alpha_function(const AlphaFunction& fn) {
  if (const auto* c = std::get_if<ConstantAlpha>(&fn)) {
    check_alpha_value(c->alpha);
  } else if (const auto* l = std::get_if<LogisticAlpha>(&fn)) {
    require(std::isfinite(l->lo) && std::isfinite(l->hi) && l->lo < l->hi,
            "logistic alpha needs lo < hi");
    check_alpha_value(l->lo);
    check_alpha_value(l->hi);
    require(std::isfinite(l->rate) && std::isfinite(l->center), "logistic parameters must be finite");
  } else {
    const auto& t = std::get<TableAlpha>(fn);
    require(!t.knots.empty(), "alpha table needs at least one knot");
    for (std::size_t i = 0; i < t.knots.size(); ++i) {
      check_alpha_value(t.knots[i].second);
      if (i > 0) require(t.knots[i].first > t.knots[i - 1].first, "alpha table times must increase");
    }
  }
}

double eval_alpha(const AlphaFunction& fn, double t) {
  if (const auto* c = std::get_if<ConstantAlpha>(&fn)) return c->alpha;
  if (const auto* l = std::get_if<LogisticAlpha>(&fn))
    return l->lo + (l->hi - l->lo) / (1.0 + std::exp(-l->rate * (t - l->center)));
  const auto& knots = std::get<TableAlpha>(fn).knots;
  require(!knots.empty() && t >= knots.front().first && t <= knots.back().first,
          "t lies outside the alpha table");
  const auto it = std::lower_bound(knots.begin(), knots.end(), t,
                                   [](const auto& k, double v) { return k.first < v; });
  if (it->first == t) return it->second;
  const auto& [t1, a1] = *it;
  const auto& [t0, a0] = *(it - 1);
  return a0 + (a1 - a0) * (t - t0) / (t1 - t0);
}

std::string describe(const AlphaFunction& fn) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* c = std::get_if<ConstantAlpha>(&fn)) {
    os << "constant:" << c->alpha;
  } else if (const auto* l = std::get_if<LogisticAlpha>(&fn)) {
    os << "logistic:" << l->lo << ',' << l->hi << ',' << l->rate << ',' << l->center;
  } else {
    os << "table:";
    const auto& knots = std::get<TableAlpha>(fn).knots;
    for (std::size_t i = 0; i < knots.size(); ++i)
      os << (i ? ";" : "") << knots[i].first << ',' << knots[i].second;
  }
  return os.str();
}

LogisticAlpha default_logistic(std::int64_t n_points) {
  return {1.2, 1.85, 5.0 / 1000.0, static_cast<double>(n_points) / 2.0};
}

double c_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 2.0, "c(alpha) needs alpha in (0, 2)");
  require(alpha != 1.0, "c(alpha) has a removable singularity at alpha = 1");
  const double inner =
      2.0 / alpha * boost::math::tgamma(1.0 - alpha) * std::cos(std::numbers::pi * alpha / 2.0);
  return std::pow(inner, -1.0 / alpha);
}

void MultistableConfig::validate() const {
  base.validate();
  validate_alpha_function(alpha_fn);
  require(alpha_grid >= 0, "alpha_grid must be >= 0");
  require(alpha_grid <= base.n_points, "alpha_grid must not exceed n_points");
}

AlphaQuantization quantize_alpha(const AlphaFunction& fn, std::int64_t n_points,
                                 std::int64_t alpha_grid) {
  require(n_points >= 1, "n_points must be >= 1");
  require(alpha_grid >= 0, "alpha_grid must be >= 0");
  validate_alpha_function(fn);
  std::vector<double> values(static_cast<std::size_t>(n_points));
  for (std::int64_t i = 0; i < n_points; ++i) {
    values[static_cast<std::size_t>(i)] = eval_alpha(fn, static_cast<double>(i + 1));
    check_alpha_value(values[static_cast<std::size_t>(i)]);
  }
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;

  AlphaQuantization q;
  q.line_of_point.resize(values.size());
  if (alpha_grid == 0) {
    std::vector<double> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    q.line_alpha = distinct;
    for (std::size_t i = 0; i < values.size(); ++i)
      q.line_of_point[i] =
          std::lower_bound(distinct.begin(), distinct.end(), values[i]) - distinct.begin();
    return q;
  }

  const double width = (hi - lo) / static_cast<double>(alpha_grid);
  std::vector<std::int64_t> cell(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::int64_t c = width > 0.0 ? static_cast<std::int64_t>((values[i] - lo) / width) : 0;
    cell[i] = std::clamp<std::int64_t>(c, 0, alpha_grid - 1);
  }
  std::vector<std::int64_t> line_of_cell(static_cast<std::size_t>(alpha_grid), -1);
  std::vector<std::int64_t> occupied(cell.begin(), cell.end());
  std::sort(occupied.begin(), occupied.end());
  occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
  for (std::int64_t c : occupied) {
    line_of_cell[static_cast<std::size_t>(c)] = static_cast<std::int64_t>(q.line_alpha.size());
    q.line_alpha.push_back(lo + (static_cast<double>(c) + 0.5) * width);
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    q.line_of_point[i] = line_of_cell[static_cast<std::size_t>(cell[i])];
  return q;
}

Path synthesize_multistable(const KernelDescriptor& kernel, const MultistableConfig& config,
                            NoiseTrace* trace) {
  config.validate();
  const SynthesisConfig& base = config.base;
  const std::size_t need = synthesis_memory_estimate(base);
  require(need <= kSynthesisMemoryBudget,
          "synthesis would need about " + std::to_string(need >> 20) + " MiB, over the budget");

  const AlphaQuantization q = quantize_alpha(config.alpha_fn, base.n_points, config.alpha_grid);
  const auto [lo_it, hi_it] = std::minmax_element(q.line_alpha.begin(), q.line_alpha.end());
  const std::vector<std::string> notes = advisories(kernel, config.alpha_fn, *lo_it, *hi_it);

  const std::size_t lines = q.line_alpha.size();
  std::vector<std::int64_t> first(lines, base.n_points + 1);
  std::vector<std::int64_t> last(lines, 0);
  for (std::int64_t i = 0; i < base.n_points; ++i) {
    const auto l = static_cast<std::size_t>(q.line_of_point[static_cast<std::size_t>(i)]);
    first[l] = std::min(first[l], i + 1);
    last[l] = std::max(last[l], i + 1);
  }

  const bool shared_grid = kernel.family != KernelFamily::lfsn;
  detail::LineWorkspace shared;
  if (shared_grid && lines > 1) {
    shared.atoms_first = 0;
    shared.atoms = prepare_atoms(base.seed, 0, base.noise_count());
  }

  Path path;
  path.values.assign(static_cast<std::size_t>(base.n_points), 0.0);
  std::int64_t degenerate = 0;
  for (std::size_t l = 0; l < lines; ++l) {
    const double alpha = q.line_alpha[l];
    const std::int64_t k0 = config.renormalize ? 1 : first[l];
    const std::int64_t k1 = config.renormalize ? base.n_points : last[l];
    detail::LineWorkspace own;
    detail::LineWorkspace& ws = shared_grid ? shared : own;
    const KernelDescriptor line_kernel = kernel_for_alpha(kernel, alpha);
    std::vector<double> v = detail::synthesize_range(line_kernel, alpha, base, k0, k1, ws, trace);
    if (config.renormalize) {
      const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
      const double vmin = *mn;
      const double vmax = *mx;
      if (!(vmax > vmin)) {
        std::fill(v.begin(), v.end(), 0.0);
        ++degenerate;
      } else {
        for (double& x : v) x = std::clamp(2.0 * (x - vmin) / (vmax - vmin) - 1.0, -1.0, 1.0);
      }
    } else {
      for (double& x : v) x *= base.scale;
    }
    for (std::int64_t k = first[l]; k <= last[l]; ++k) {
      const auto i = static_cast<std::size_t>(k - 1);
      if (q.line_of_point[i] == static_cast<std::int64_t>(l))
        path.values[i] = v[static_cast<std::size_t>(k - k0)];
    }
  }

  describe_kernel(kernel, path.meta);
  describe_config(base, path.meta);
  path.meta["alpha_fn"] = describe(config.alpha_fn);
  path.meta["alpha_grid"] = std::to_string(config.alpha_grid);
  path.meta["alpha_lines"] = std::to_string(lines);
  path.meta["renormalize"] = config.renormalize ? "per_line_min_max" : "none";
  path.meta["degenerate_lines"] = std::to_string(degenerate);
  path.meta["method"] = "multistable_gluing";
  for (std::size_t i = 0; i < notes.size(); ++i)
    path.meta["advisory_" + std::to_string(i + 1)] = notes[i];
  return path;
}

}  // namespace stabma
