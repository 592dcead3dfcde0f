// Copyright 2026 The icin-feedback Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "icin/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <thread>

#include "icin/errors.hpp"
#include "icin/fading.hpp"
#include "icin/precoder.hpp"
#include "icin/quantizer.hpp"

namespace icin {
namespace {

// Substream tags inside one trial.
constexpr std::uint64_t kChannelTag = 1;
constexpr std::uint64_t kOtherUsersTag = 2;
constexpr std::uint64_t kQuantizerTag = 3;

struct TrialDraw {
  CVector h_old, h;
  std::vector<CVector> g_old, g;
  std::vector<CVector> bs0_nulls;                 // other users' directions toward BS 0
  std::vector<CVector> neighbor_desired;          // each neighbor's own user
  std::vector<std::vector<CVector>> neighbor_nulls;  // other users toward each neighbor
};

TrialDraw draw(const LinkParams& link, RngStream& rng) {
  const std::size_t nt = link.nt;
  const std::size_t n_int = link.alphas.size();
  RngStream ch = rng.substream(kChannelTag);
  RngStream others = rng.substream(kOtherUsersTag);
  TrialDraw d;
  d.h_old = rayleigh_channel(ch, nt);
  d.h = gauss_markov_evolve(d.h_old, link.eta_desired, ch);
  for (std::size_t l = 0; l < n_int; ++l) {
    d.g_old.push_back(rayleigh_channel(ch, nt));
    d.g.push_back(gauss_markov_evolve(d.g_old.back(), link.eta_interferers[l], ch));
  }
  for (std::size_t j = 0; j < n_int; ++j) d.bs0_nulls.push_back(isotropic_direction(others, nt));
  for (std::size_t l = 0; l < n_int; ++l) {
    d.neighbor_desired.push_back(isotropic_direction(others, nt));
    std::vector<CVector> nulls;
    for (std::size_t j = 0; j + 1 < n_int; ++j) nulls.push_back(isotropic_direction(others, nt));
    d.neighbor_nulls.push_back(std::move(nulls));
  }
  return d;
}

double rate_for(const TrialDraw& d, const LinkParams& link, const CVector& desired_dir,
                std::span<const CVector> interferer_dirs) {
  const Beamformer f0 = icin_beamformer({desired_dir, d.bs0_nulls});
  std::vector<Beamformer> beams;
  beams.reserve(interferer_dirs.size());
  for (std::size_t l = 0; l < interferer_dirs.size(); ++l) {
    CellSideInfo info{d.neighbor_desired[l], {interferer_dirs[l]}};
    info.caused_interference.insert(info.caused_interference.end(), d.neighbor_nulls[l].begin(),
                                    d.neighbor_nulls[l].end());
    beams.push_back(icin_beamformer(info));
  }
  const double s = sinr(d.h, f0, d.g, beams, link.rho, link.alphas);
  return std::log2(1.0 + s);
}

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

Moments moments(std::span<const double> v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  for (double x : v) m.mean += x;
  m.mean /= n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return m;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MultiTrialResult run_trial_multi(const Scenario& scenario, const LinkParams& link,
                                 std::span<const BitAllocation> allocations, RngStream& rng,
                                 int explicit_cap, const FixedCodebooks* codebooks) {
  link.validate();
  if (link.nt != scenario.nt) throw DomainError("run_trial: link and scenario disagree on nt");
  const std::size_t n_int = link.alphas.size();
  const TrialDraw d = draw(link, rng);

  MultiTrialResult out;
  std::vector<CVector> true_dirs;
  for (const auto& g : d.g) true_dirs.push_back(normalized(g));
  out.rate_fullcsi = rate_for(d, link, normalized(d.h), true_dirs);

  const CVector h_dir = normalized(d.h_old);
  std::vector<CVector> g_dirs;
  for (const auto& g : d.g_old) g_dirs.push_back(normalized(g));

  for (const BitAllocation& a : allocations) {
    if (a.interferer_bits.size() != n_int)
      throw DomainError("run_trial: allocation size does not match the interferer count");
    // Quantizer randomness is keyed by channel, so allocations that agree on
    // a channel's bits also agree on its quantized direction.
    RngStream q_rng = rng.substream(kQuantizerTag);
    RngStream q_des = q_rng.substream(0);
    const auto quant = [&](std::span<const Complex> dir, std::size_t slot, int bits,
                           RngStream& r) {
      return codebooks ? codebooks->quantize(dir, slot, bits, r)
                       : rvq_quantize(dir, bits, r, explicit_cap);
    };
    const CVector h_hat = quant(h_dir, 0, a.desired_bits, q_des).direction;
    std::vector<CVector> g_hat;
    for (std::size_t l = 0; l < n_int; ++l) {
      RngStream q_int = q_rng.substream(l + 1);
      g_hat.push_back(quant(g_dirs[l], l + 1, a.interferer_bits[l], q_int).direction);
    }
    out.rate_limited.push_back(rate_for(d, link, h_hat, g_hat));
  }
  return out;
}

TrialResult run_trial(const Scenario& scenario, const LinkParams& link,
                      const BitAllocation& allocation, RngStream& rng, int explicit_cap,
                      const FixedCodebooks* codebooks) {
  const MultiTrialResult r =
      run_trial_multi(scenario, link, std::span<const BitAllocation>(&allocation, 1), rng,
                      explicit_cap, codebooks);
  return {r.rate_limited.front(), r.rate_fullcsi};
}

SweepKind parse_sweep_kind(std::string_view name) {
  if (name == "distance") return SweepKind::kDistance;
  if (name == "bits") return SweepKind::kBits;
  if (name == "delay") return SweepKind::kDelay;
  throw DomainError("unknown sweep kind '" + std::string(name) + "'");
}

std::string_view to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::kDistance: return "distance";
    case SweepKind::kBits: return "bits";
    case SweepKind::kDelay: return "delay";
  }
  return "distance";
}

SweepReport run_sweep(SweepKind kind, const SimConfig& config, unsigned threads) {
  config.validate();
  struct Point {
    double value;
    SimConfig config;
    double distance;
  };
  std::vector<Point> points;
  switch (kind) {
    case SweepKind::kDistance:
      for (double d : config.distance_grid()) points.push_back({d, config, d});
      break;
    case SweepKind::kBits:
      for (int b : config.btot_grid()) {
        SimConfig c = config;
        c.btot = b;
        points.push_back({static_cast<double>(b), c, config.cell_radius_m});
      }
      break;
    case SweepKind::kDelay:
      for (int b : config.backhaul_delay_grid()) {
        SimConfig c = config;
        c.backhaul_delay_symbols = b;
        points.push_back({static_cast<double>(b), c, config.cell_radius_m});
      }
      break;
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::optional<FixedCodebooks> codebooks;
  if (config.fixed_codebook)
    codebooks.emplace(config.master_seed, config.nt, config.explicit_quantizer_cap);

  SweepReport report;
  report.kind = kind;
  const std::size_t trials = config.trials;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Scenario scenario = build_hex_scenario(points[p].config);
    const LinkParams link = user_link_params(scenario, points[p].distance);
    const int btot = points[p].config.btot;
    const std::vector<BitAllocation> allocations{allocate(btot, link, config.regime),
                                                 equal_bit_allocation(btot, link.n_cells())};
    if (codebooks) {
      for (const BitAllocation& a : allocations) {
        codebooks->prepare(0, a.desired_bits);
        for (std::size_t l = 0; l < a.interferer_bits.size(); ++l)
          codebooks->prepare(l + 1, a.interferer_bits[l]);
      }
    }
    const FixedCodebooks* books = codebooks ? &*codebooks : nullptr;

    std::vector<double> adaptive(trials), equal(trials), full(trials);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (std::size_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
        RngStream rng(config.master_seed, (static_cast<std::uint64_t>(p) << 32) | t);
        const MultiTrialResult r =
            run_trial_multi(scenario, link, allocations, rng, config.explicit_quantizer_cap,
                            books);
        adaptive[t] = r.rate_limited[0];
        equal[t] = r.rate_limited[1];
        full[t] = r.rate_fullcsi;
      }
    };
    const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, trials));
    if (n_workers <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    }

    SweepRow row;
    row.sweep_value = points[p].value;
    const Moments ma = moments(adaptive), me = moments(equal), mf = moments(full);
    row.rate_adaptive = ma.mean;
    row.rate_equal = me.mean;
    row.rate_fullcsi = mf.mean;
    row.se_adaptive = ma.se;
    row.se_equal = me.se;
    row.se_fullcsi = mf.se;
    row.norm_adaptive = ma.mean / mf.mean;
    row.norm_equal = me.mean / mf.mean;
    row.allocation = allocations[0];
    row.equal_allocation = allocations[1];
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_csv(const SweepReport& report, std::ostream& out) {
  out << "sweep_value,rate_adaptive,rate_equal,rate_fullcsi,norm_adaptive,norm_equal,allocation\n";
  for (const auto& r : report.rows) {
    out << format_double(r.sweep_value) << ',' << format_double(r.rate_adaptive) << ','
        << format_double(r.rate_equal) << ',' << format_double(r.rate_fullcsi) << ','
        << format_double(r.norm_adaptive) << ',' << format_double(r.norm_equal) << ','
        << r.allocation.to_pipe_string() << '\n';
  }
}

std::string to_csv(const SweepReport& report) {
  std::ostringstream os;
  write_csv(report, os);
  return os.str();
}

}  // namespace icin
