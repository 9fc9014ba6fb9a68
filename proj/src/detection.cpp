// Copyright 2026 The noonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noonsim/detection.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

#include "noonsim/error.hpp"

namespace noonsim {
namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// Calls f(counts, probability) for every routing of n photons over the cascade outputs.
template <typename F>
void for_each_routing(int n, const std::vector<double> &p, F &&f) {
    std::vector<int> counts(p.size(), 0);
    auto rec = [&](auto &&self, std::size_t slot, int left, double log_w) -> void {
        if (slot + 1 == p.size()) {
            counts[slot] = left;
            if (left > 0 && p[slot] == 0.0) {
                return;
            }
            double lw = log_w - log_factorial(left) + (left > 0 ? left * std::log(p[slot]) : 0.0);
            f(counts, std::exp(lw + log_factorial(n)));
            return;
        }
        for (int k = 0; k <= left; ++k) {
            if (k > 0 && p[slot] == 0.0) {
                break;
            }
            counts[slot] = k;
            self(self, slot + 1, left - k, log_w - log_factorial(k) + (k > 0 ? k * std::log(p[slot]) : 0.0));
        }
    };
    rec(rec, 0, n, 0.0);
}

void check_detector_count(const SplitterCascade &cascade, std::span<const DetectorModel> detectors) {
    if (detectors.size() != cascade.detector_count()) {
        throw Error(ErrorCode::kInvalidParameter, "one detector model per cascade output required");
    }
}

std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

const char *const kColumns[] = {"hwp3_deg",   "phase_deg", "p_twofold",     "p_threefold_unheralded",
                                "p_fourfold", "c_twofold", "c_threefold_unheralded", "c_fourfold"};

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<double> parse_field(const std::string &s, bool required, std::size_t line_no) {
    if (s.empty()) {
        if (required) {
            throw Error(ErrorCode::kParse, "empty required field on line " + std::to_string(line_no));
        }
        return std::nullopt;
    }
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::kParse, "bad number '" + s + "' on line " + std::to_string(line_no));
    }
    return v;
}

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

HeraldedEnsemble herald_on_click(const FockState &state, std::span<const ModeId> modes, const DetectorModel &det,
                                 int demanded) {
    det.validate();
    HeraldedEnsemble ens;
    const auto counts = total_count_distribution(state, modes);
    for (const auto &[n, p] : counts) {
        const double f = det.number_resolving ? det.report_probability(n, demanded) : det.click_probability(n);
        const double w = p * f;
        ens.herald_probability += w;
        if (w > 0.0) {
            ens.components.emplace_back(w, project_total_count(state, modes, n).normalized());
            ens.herald_counts.push_back(n);
        }
    }
    if (ens.herald_probability < kPruneThreshold) {
        throw Error(ErrorCode::kZeroProbabilityBranch, "herald probability " + format_double(ens.herald_probability));
    }
    for (auto &c : ens.components) {
        c.first /= ens.herald_probability;
    }
    return ens;
}

std::vector<double> cascade_pattern_distribution(int photons, const SplitterCascade &cascade,
                                                 std::span<const DetectorModel> detectors) {
    check_detector_count(cascade, detectors);
    const auto p = cascade_probs(cascade);
    const std::size_t d = p.size();
    std::vector<double> out(std::size_t{1} << d, 0.0);
    std::vector<double> pattern(out.size());
    for_each_routing(photons, p, [&](const std::vector<int> &counts, double w) {
        std::fill(pattern.begin(), pattern.end(), 0.0);
        pattern[0] = w;
        // fold in detectors one at a time
        for (std::size_t i = 0; i < d; ++i) {
            const double c = detectors[i].click_probability(counts[i]);
            const std::size_t bit = std::size_t{1} << i;
            for (std::size_t m = 0; m < bit; ++m) {
                pattern[m | bit] = pattern[m] * c;
                pattern[m] *= 1.0 - c;
            }
        }
        for (std::size_t m = 0; m < out.size(); ++m) {
            out[m] += pattern[m];
        }
    });
    return out;
}

double kfold_coincidence_prob(const CountDistribution &dist, const SplitterCascade &cascade,
                              std::span<const DetectorModel> detectors, std::span<const int> required) {
    check_detector_count(cascade, detectors);
    for (int r : required) {
        if (r < 0 || static_cast<std::size_t>(r) >= detectors.size()) {
            throw Error(ErrorCode::kInvalidParameter, "required detector index out of range");
        }
    }
    const auto p = cascade_probs(cascade);
    double total = 0.0;
    for (const auto &[n, pn] : dist) {
        double given_n = 0.0;
        for_each_routing(n, p, [&](const std::vector<int> &counts, double w) {
            double all = w;
            for (int r : required) {
                all *= detectors[r].click_probability(counts[r]);
            }
            given_n += all;
        });
        total += pn * given_n;
    }
    return total;
}

double kfold_coincidence_prob(const CountDistribution &dist, const SplitterCascade &cascade,
                              const DetectorModel &detector, std::span<const int> required) {
    std::vector<DetectorModel> dets(cascade.detector_count(), detector);
    return kfold_coincidence_prob(dist, cascade, dets, required);
}

double OutcomeDistribution::twofold() const {
    double s = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
        if ((m & herald_bit()) && (m & 1)) {
            s += probs[m];
        }
    }
    return s;
}

double OutcomeDistribution::threefold_unheralded() const {
    double s = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
        if ((m & cascade_all()) == cascade_all()) {
            s += probs[m];
        }
    }
    return s;
}

double OutcomeDistribution::fourfold() const { return probs[herald_bit() | cascade_all()]; }

double OutcomeDistribution::herald_singles() const {
    double s = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
        if (m & herald_bit()) {
            s += probs[m];
        }
    }
    return s;
}

OutcomeDistribution outcome_distribution(const CircuitPreset &preset, const FockState &analyzed) {
    const auto &stage = preset.measurement;
    const std::size_t heralds = preset.herald_paths.size();
    std::vector<ModeId> observed;
    std::vector<std::size_t> group;
    for (std::size_t k = 0; k < heralds; ++k) {
        for (const auto &m : preset.herald_modes(k)) {
            observed.push_back(m);
            group.push_back(k);
        }
    }
    for (const auto &m : preset.transmitted_modes()) {
        observed.push_back(m);
        group.push_back(heralds);
    }
    std::map<std::vector<int>, double> joint;
    for (const auto &[occ, p] : marginal_distribution(analyzed, observed)) {
        std::vector<int> key(heralds + 1, 0);
        for (std::size_t i = 0; i < occ.size(); ++i) {
            key[group[i]] += occ[i];
        }
        joint[key] += p;
    }

    OutcomeDistribution out;
    out.cascade_detectors = stage.cascade.detector_count();
    out.probs.assign(std::size_t{1} << (out.cascade_detectors + 1), 0.0);
    std::map<int, std::vector<double>> pattern_cache;
    for (const auto &[key, p] : joint) {
        double herald = 1.0;
        for (std::size_t k = 0; k < heralds; ++k) {
            herald *= preset.herald_detectors[k].click_probability(key[k]);
        }
        const int t = key[heralds];
        auto it = pattern_cache.find(t);
        if (it == pattern_cache.end()) {
            it = pattern_cache.emplace(t, cascade_pattern_distribution(t, stage.cascade, stage.detectors)).first;
        }
        for (std::size_t m = 0; m < it->second.size(); ++m) {
            out.probs[m | out.herald_bit()] += p * herald * it->second[m];
            out.probs[m] += p * (1.0 - herald) * it->second[m];
        }
    }
    return out;
}

double herald_click_probability(const CircuitPreset &preset, const FockState &prepared) {
    std::vector<ModeId> observed;
    std::vector<std::size_t> group;
    for (std::size_t k = 0; k < preset.herald_paths.size(); ++k) {
        for (const auto &m : preset.herald_modes(k)) {
            observed.push_back(m);
            group.push_back(k);
        }
    }
    double total = 0.0;
    for (const auto &[occ, p] : marginal_distribution(prepared, observed)) {
        std::vector<int> n(preset.herald_paths.size(), 0);
        for (std::size_t i = 0; i < occ.size(); ++i) {
            n[group[i]] += occ[i];
        }
        double c = 1.0;
        for (std::size_t k = 0; k < n.size(); ++k) {
            c *= preset.herald_detectors[k].click_probability(n[k]);
        }
        total += p * c;
    }
    return total;
}

bool FringeTable::has_counts() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const FringeRow &r) {
        return r.c_twofold && r.c_threefold_unheralded && r.c_fourfold;
    });
}

std::vector<double> FringeTable::column(const std::string &name) const {
    std::vector<double> out;
    for (const auto &r : rows) {
        std::optional<double> v;
        if (name == "hwp3_deg") v = r.hwp3_deg;
        else if (name == "phase_deg") v = r.phase_deg;
        else if (name == "p_twofold") v = r.p_twofold;
        else if (name == "p_threefold_unheralded") v = r.p_threefold_unheralded;
        else if (name == "p_fourfold") v = r.p_fourfold;
        else if (name == "c_twofold") v = r.c_twofold;
        else if (name == "c_threefold_unheralded") v = r.c_threefold_unheralded;
        else if (name == "c_fourfold") v = r.c_fourfold;
        else throw Error(ErrorCode::kParse, "unknown column '" + name + "'");
        if (!v) {
            throw Error(ErrorCode::kParse, "column '" + name + "' has empty entries");
        }
        out.push_back(*v);
    }
    return out;
}

std::vector<double> FringeTable::phases_rad() const {
    std::vector<double> out;
    for (const auto &r : rows) {
        out.push_back(deg_to_rad(r.phase_deg));
    }
    return out;
}

std::string FringeTable::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
        os << (i ? "," : "") << kColumns[i];
    }
    os << "\n";
    auto opt = [](const std::optional<double> &v) { return v ? format_double(*v) : std::string(); };
    for (const auto &r : rows) {
        os << format_double(r.hwp3_deg) << ',' << format_double(r.phase_deg) << ',' << format_double(r.p_twofold)
           << ',' << format_double(r.p_threefold_unheralded) << ',' << format_double(r.p_fourfold) << ','
           << opt(r.c_twofold) << ',' << opt(r.c_threefold_unheralded) << ',' << opt(r.c_fourfold) << "\n";
    }
    return os.str();
}

FringeTable FringeTable::from_csv(const std::string &text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) {
        throw Error(ErrorCode::kParse, "empty CSV");
    }
    const auto header = split_csv_line(line);
    std::map<std::string, std::size_t> at;
    for (std::size_t i = 0; i < header.size(); ++i) {
        at[header[i]] = i;
    }
    for (const char *c : kColumns) {
        if (!at.count(c)) {
            throw Error(ErrorCode::kParse, std::string("missing column '") + c + "'");
        }
    }
    FringeTable t;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != header.size()) {
            throw Error(ErrorCode::kParse, "wrong field count on line " + std::to_string(line_no));
        }
        auto get = [&](const char *name, bool required) { return parse_field(f[at[name]], required, line_no); };
        FringeRow r;
        r.hwp3_deg = *get("hwp3_deg", true);
        r.phase_deg = *get("phase_deg", true);
        r.p_twofold = *get("p_twofold", true);
        r.p_threefold_unheralded = *get("p_threefold_unheralded", true);
        r.p_fourfold = *get("p_fourfold", true);
        r.c_twofold = get("c_twofold", false);
        r.c_threefold_unheralded = get("c_threefold_unheralded", false);
        r.c_fourfold = get("c_fourfold", false);
        t.rows.push_back(r);
    }
    return t;
}

FringeTable fringe_scan(const CircuitPreset &preset, std::span<const double> hwp3_angles) {
    preset.validate();
    const FockState prepared = prepare(preset);
    FringeTable table;
    for (double beta : hwp3_angles) {
        const auto dist = outcome_distribution(preset, analyze(preset, prepared, beta));
        FringeRow r;
        r.hwp3_deg = rad_to_deg(beta);
        r.phase_deg = rad_to_deg(phase_of_hwp3(beta));
        r.p_twofold = dist.twofold();
        r.p_threefold_unheralded = dist.threefold_unheralded();
        r.p_fourfold = dist.fourfold();
        table.rows.push_back(r);
    }
    return table;
}

double pulse_uniform(std::uint64_t seed, std::uint64_t angle_index, std::uint64_t pulse_index) {
    const std::uint64_t h = splitmix(splitmix(splitmix(seed) ^ angle_index) + pulse_index);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

FringeTable mc_sample_counts(const CircuitPreset &preset, std::span<const double> hwp3_angles,
                             std::int64_t pulses_per_point, std::uint64_t seed, unsigned workers) {
    if (pulses_per_point < 1) {
        throw Error(ErrorCode::kInvalidParameter, "pulses_per_point must be at least 1");
    }
    preset.validate();
    const FockState prepared = prepare(preset);
    FringeTable table;
    std::vector<OutcomeDistribution> dists;
    std::vector<std::vector<double>> cdfs;
    for (double beta : hwp3_angles) {
        dists.push_back(outcome_distribution(preset, analyze(preset, prepared, beta)));
        std::vector<double> cdf;
        double acc = 0.0;
        for (double p : dists.back().probs) {
            acc += p;
            cdf.push_back(acc);
        }
        cdfs.push_back(std::move(cdf));
    }

    constexpr std::int64_t kBlock = 1 << 16;
    const std::int64_t blocks_per_angle = (pulses_per_point + kBlock - 1) / kBlock;
    const std::size_t outcomes = dists.empty() ? 0 : dists.front().probs.size();
    const std::size_t tasks = hwp3_angles.size() * static_cast<std::size_t>(blocks_per_angle);
    std::vector<std::vector<std::int64_t>> task_counts(tasks, std::vector<std::int64_t>(outcomes, 0));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t t = next++; t < tasks; t = next++) {
            const std::size_t a = t / static_cast<std::size_t>(blocks_per_angle);
            const std::int64_t first = static_cast<std::int64_t>(t % blocks_per_angle) * kBlock;
            const std::int64_t last = std::min(first + kBlock, pulses_per_point);
            const auto &cdf = cdfs[a];
            const auto &probs = dists[a].probs;
            auto &counts = task_counts[t];
            for (std::int64_t pulse = first; pulse < last; ++pulse) {
                const double u = pulse_uniform(seed, a, static_cast<std::uint64_t>(pulse));
                std::size_t k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
                if (k >= outcomes) {
                    // u landed beyond the rounded total; take the last populated outcome
                    k = outcomes - 1;
                    while (k > 0 && probs[k] == 0.0) {
                        --k;
                    }
                }
                ++counts[k];
            }
        }
    };
    unsigned n_workers = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, std::max<std::size_t>(tasks, 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < n_workers; ++w) {
            pool.emplace_back(work);
        }
        work();
    }

    for (std::size_t a = 0; a < hwp3_angles.size(); ++a) {
        std::vector<std::int64_t> counts(outcomes, 0);
        for (std::int64_t b = 0; b < blocks_per_angle; ++b) {
            const auto &tc = task_counts[a * static_cast<std::size_t>(blocks_per_angle) + static_cast<std::size_t>(b)];
            for (std::size_t k = 0; k < outcomes; ++k) {
                counts[k] += tc[k];
            }
        }
        const auto &d = dists[a];
        std::int64_t two = 0, three = 0, four = 0;
        for (std::size_t m = 0; m < outcomes; ++m) {
            if ((m & d.herald_bit()) && (m & 1)) two += counts[m];
            if ((m & d.cascade_all()) == d.cascade_all()) three += counts[m];
            if (m == (d.herald_bit() | d.cascade_all())) four += counts[m];
        }
        FringeRow r;
        r.hwp3_deg = rad_to_deg(hwp3_angles[a]);
        r.phase_deg = rad_to_deg(phase_of_hwp3(hwp3_angles[a]));
        r.p_twofold = d.twofold();
        r.p_threefold_unheralded = d.threefold_unheralded();
        r.p_fourfold = d.fourfold();
        r.c_twofold = static_cast<double>(two);
        r.c_threefold_unheralded = static_cast<double>(three);
        r.c_fourfold = static_cast<double>(four);
        table.rows.push_back(r);
    }
    return table;
}

}  // namespace noonsim
