// Copyright 2026 The r2sim Authors.
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

#include "r2sim/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace r2sim {

const char*
to_string(Method m)
{
  switch (m) {
  case Method::Local: return "local";
  case Method::Producer: return "producer";
  case Method::OptOff: return "opt_off";
  case Method::OptAuto: return "opt_auto";
  }
  return "?";
}

Method
parse_method(std::string_view text)
{
  if (text == "local") {
    return Method::Local;
  }
  if (text == "producer") {
    return Method::Producer;
  }
  if (text == "opt_off") {
    return Method::OptOff;
  }
  if (text == "opt_auto") {
    return Method::OptAuto;
  }
  throw ConfigError("unknown method '" + std::string(text) + "' (expected local|producer|opt_off|opt_auto)");
}

void
ExperimentConfig::validate() const
{
  if (datasize == 0) {
    throw ConfigError("datasize must be positive");
  }
  if (metasize == 0) {
    throw ConfigError("metasize must be positive");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must be in (0, 1]");
  }
  if (!(cycles_per_op >= 1.0)) {
    throw ConfigError("cycles per op must be >= 1");
  }
  if (interest_size == 0) {
    throw ConfigError("interest size must be positive");
  }
  if (!(rtt_divisor > 0.0)) {
    throw ConfigError("rtt divisor must be positive");
  }
  if (!(compute_noise >= 0.0 && compute_noise < 1.0)) {
    throw ConfigError("compute noise must be in [0, 1)");
  }
  try {
    R2Name r = parse_r2_name(request);
    if (r.trace_id) {
      throw ConfigError("request name must not carry a trace suffix");
    }
  }
  catch (const NameError& e) {
    throw ConfigError(std::string("bad request name: ") + e.what());
  }
}

std::pair<NodeId, NodeId>
endpoints(const ExperimentConfig& cfg, const Topology& t)
{
  auto c = cfg.client ? cfg.client : t.client;
  auto p = cfg.producer ? cfg.producer : t.producer;
  if (!c || !p) {
    throw ConfigError("client and producer must be given by the topology or the config");
  }
  if (!t.has_node(*c) || !t.has_node(*p)) {
    throw ConfigError("client or producer is not in the topology");
  }
  if (*c == *p) {
    throw ConfigError("client and producer must differ");
  }
  return {*c, *p};
}

RunMetrics
run_experiment(const ExperimentConfig& cfg)
{
  Topology base;
  try {
    base = load_topology(cfg.topology_path);
  }
  catch (const TopologyError& e) {
    throw ConfigError(e.what());
  }
  return run_experiment(cfg, base);
}

RunMetrics
run_experiment(const ExperimentConfig& cfg, const Topology& base)
{
  cfg.validate();
  auto [client, producer] = endpoints(cfg, base);
  Topology t = assign_capacities(base, cfg.seed);
  t.client = client;
  t.producer = producer;

  SessionConfig sc;
  sc.request = cfg.request;
  sc.datasize = cfg.datasize;
  sc.metasize = cfg.effective_metasize();
  sc.complexity = cfg.complexity;
  sc.cycles_per_op = cfg.cycles_per_op;
  sc.alpha = cfg.alpha;
  sc.interest_size = cfg.interest_size;
  sc.interest_lifetime = cfg.interest_lifetime;
  sc.mode = cfg.method == Method::OptAuto ? SelectionMode::Auto : SelectionMode::Off;
  sc.estimator.rtt_divisor = cfg.rtt_divisor;
  sc.cs_enabled = cfg.cs_enabled;
  sc.compute_noise = cfg.compute_noise;
  sc.seed = cfg.seed;
  sc.event_cap = cfg.event_cap;
  sc.record_trace = cfg.record_trace;

  Session s(t, client, producer, sc);

  RunMetrics m;
  m.method = cfg.method;
  m.datasize = cfg.datasize;
  m.complexity = cfg.complexity;
  m.seed = cfg.seed;
  m.client = client;
  m.producer = producer;
  m.path = s.path();

  switch (cfg.method) {
  case Method::Local: {
    BaselineResult r = s.run_local();
    m.end_to_end = r.end_to_end;
    m.t_mi = r.t_interest;
    m.t_data = r.t_data;
    m.c_exec = r.t_compute;
    m.executor = r.executor;
    break;
  }
  case Method::Producer: {
    BaselineResult r = s.run_producer();
    m.end_to_end = r.end_to_end;
    m.t_mi = r.t_interest;
    m.c_exec = r.t_compute;
    m.t_res = r.t_result;
    m.executor = r.executor;
    break;
  }
  case Method::OptOff:
  case Method::OptAuto: {
    Phase1Result p1 = s.run_phase1();
    Phase2Result p2 = s.run_phase2();
    m.t_mi = p1.t_metadata_interest;
    m.t_md = p1.t_metadata;
    m.t_ri = p2.t_result_interest;
    m.t_data = p2.t_data;
    m.c_exec = p2.t_compute;
    m.t_res = p2.t_result;
    m.end_to_end = p2.end_to_end;
    m.executor = p2.executor;
    m.bound_b = p1.bound_b;
    m.hops = s.hop_samples();
    m.selections = s.selections();
    break;
  }
  }
  m.bolt_stats = s.bolt_stats();
  if (cfg.record_trace) {
    m.trace = s.trace().str();
  }
  return m;
}

std::vector<HopSample>
hop_profile(const ExperimentConfig& cfg, const Topology& base)
{
  if (cfg.method != Method::OptOff && cfg.method != Method::OptAuto) {
    throw ConfigError("hop profiles exist only for opt_off and opt_auto");
  }
  return run_experiment(cfg, base).hops;
}

std::string
csv_header()
{
  return "method,datasize,complexity,seed,D_us,t_mi_us,t_md_us,t_ri_us,t_data_us,c_exec_us,t_res_us,"
         "executor,bound_b";
}

std::string
csv_row(const RunMetrics& m)
{
  std::string out;
  out += to_string(m.method);
  out += ',' + std::to_string(m.datasize);
  out += ',';
  out += to_string(m.complexity);
  out += ',' + std::to_string(m.seed);
  for (SimTime t : {m.end_to_end, m.t_mi, m.t_md, m.t_ri, m.t_data, m.c_exec, m.t_res}) {
    out += ',' + std::to_string(t.us());
  }
  out += ',' + std::to_string(m.executor);
  out += ',';
  if (m.bound_b) {
    out += std::to_string(*m.bound_b);
  }
  return out;
}

std::string
bolt_stats_csv(const RunMetrics& m)
{
  std::string out = "node,interests_cloned,loops_discarded,itt_peak\n";
  for (const auto& [id, s] : m.bolt_stats) {
    out += std::to_string(id) + ',' + std::to_string(s.interests_cloned) + ',' +
           std::to_string(s.loops_discarded) + ',' + std::to_string(s.itt_peak) + '\n';
  }
  return out;
}

std::vector<ExperimentConfig>
SweepGrid::expand() const
{
  std::vector<ExperimentConfig> out;
  for (Complexity c : complexities) {
    for (std::uint64_t d : datasizes) {
      for (std::uint64_t seed : seeds) {
        for (Method m : methods) {
          ExperimentConfig cfg = base;
          cfg.complexity = c;
          cfg.datasize = d;
          cfg.seed = seed;
          cfg.method = m;
          out.push_back(std::move(cfg));
        }
      }
    }
  }
  return out;
}

namespace {

std::string
trim(std::string_view s)
{
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string>
split_list(std::string_view s)
{
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) {
      comma = s.size();
    }
    std::string item = trim(s.substr(pos, comma - pos));
    if (!item.empty()) {
      out.push_back(std::move(item));
    }
    pos = comma + 1;
  }
  return out;
}

template<typename T>
T
to_number(const std::string& s, const std::string& key)
{
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("bad value '" + s + "' for " + key);
  }
  return v;
}

std::vector<std::uint64_t>
to_u64_list(const std::vector<std::string>& items, const std::string& key)
{
  std::vector<std::uint64_t> out;
  for (const auto& item : items) {
    std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_number<std::uint64_t>(item, key));
      continue;
    }
    auto lo = to_number<std::uint64_t>(item.substr(0, dots), key);
    auto hi = to_number<std::uint64_t>(item.substr(dots + 2), key);
    if (hi < lo) {
      throw ConfigError("empty range '" + item + "' for " + key);
    }
    for (std::uint64_t v = lo; v <= hi; ++v) {
      out.push_back(v);
    }
  }
  return out;
}

std::string
single(const std::vector<std::string>& items, const std::string& key)
{
  if (items.size() != 1) {
    throw ConfigError(key + " takes exactly one value");
  }
  return items.front();
}

} // namespace

SweepGrid
parse_grid(std::istream& in, const std::string& base_dir)
{
  SweepGrid g;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    if (trim(line).empty()) {
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("grid line " + std::to_string(lineNo) + ": expected key = value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    auto items = split_list(std::string_view(line).substr(eq + 1));
    if (items.empty()) {
      throw ConfigError("grid line " + std::to_string(lineNo) + ": no value for " + key);
    }

    if (key == "topology") {
      std::string path = single(items, key);
      if (!base_dir.empty() && path.front() != '/') {
        path = base_dir + "/" + path;
      }
      g.base.topology_path = path;
    }
    else if (key == "methods") {
      for (const auto& i : items) {
        g.methods.push_back(parse_method(i));
      }
    }
    else if (key == "datasizes") {
      g.datasizes = to_u64_list(items, key);
    }
    else if (key == "complexities") {
      for (const auto& i : items) {
        try {
          g.complexities.push_back(parse_complexity(i));
        }
        catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
      }
    }
    else if (key == "seeds") {
      g.seeds = to_u64_list(items, key);
    }
    else if (key == "alpha") {
      g.base.alpha = to_number<double>(single(items, key), key);
    }
    else if (key == "metasize") {
      g.base.metasize = to_number<std::uint64_t>(single(items, key), key);
    }
    else if (key == "cycles") {
      g.base.cycles_per_op = to_number<double>(single(items, key), key);
    }
    else if (key == "client") {
      g.base.client = to_number<NodeId>(single(items, key), key);
    }
    else if (key == "producer") {
      g.base.producer = to_number<NodeId>(single(items, key), key);
    }
    else if (key == "interest_size") {
      g.base.interest_size = to_number<std::uint64_t>(single(items, key), key);
    }
    else if (key == "rtt_divisor") {
      g.base.rtt_divisor = to_number<double>(single(items, key), key);
    }
    else if (key == "noise") {
      g.base.compute_noise = to_number<double>(single(items, key), key);
    }
    else if (key == "threads") {
      g.threads = to_number<unsigned>(single(items, key), key);
    }
    else {
      throw ConfigError("grid line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
    }
  }

  if (g.base.topology_path.empty()) {
    throw ConfigError("grid needs a topology");
  }
  if (g.methods.empty() || g.datasizes.empty() || g.complexities.empty() || g.seeds.empty()) {
    throw ConfigError("grid needs methods, datasizes, complexities and seeds");
  }
  g.base.validate();
  return g;
}

SweepGrid
load_grid(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open grid file " + path);
  }
  std::size_t slash = path.rfind('/');
  return parse_grid(in, slash == std::string::npos ? "" : path.substr(0, slash));
}

std::vector<RunMetrics>
sweep(const std::vector<ExperimentConfig>& cfgs, unsigned threads)
{
  std::map<std::string, Topology> topologies;
  for (const auto& c : cfgs) {
    if (topologies.count(c.topology_path) == 0) {
      try {
        topologies.emplace(c.topology_path, load_topology(c.topology_path));
      }
      catch (const TopologyError& e) {
        throw ConfigError(e.what());
      }
    }
  }

  std::vector<RunMetrics> rows(cfgs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= cfgs.size()) {
        return;
      }
      try {
        rows[i] = run_experiment(cfgs[i], topologies.at(cfgs[i].topology_path));
      }
      catch (...) {
        std::lock_guard<std::mutex> lock(failureMutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = cfgs.size();
        return;
      }
    }
  };

  threads = std::max(1U, threads);
  if (threads == 1) {
    worker();
  }
  else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return rows;
}

std::string
sweep_csv(const std::vector<RunMetrics>& rows)
{
  std::string out = csv_header() + '\n';
  for (const auto& r : rows) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

namespace {

// Operation counts restated here rather than borrowed from the estimator.
double
oracle_ops(std::uint64_t n, Complexity c)
{
  double x = static_cast<double>(n);
  double g = c == Complexity::LogN ? std::log2(x) : c == Complexity::N ? x : x * x;
  return g < 1.0 ? 1.0 : g;
}

} // namespace

NodeId
brute_force_executor(const Topology& t, const std::vector<NodeId>& path, const OracleParams& p,
                     const std::function<bool(NodeId)>& computing)
{
  if (path.empty()) {
    throw std::invalid_argument("empty path");
  }
  // Walk from the producer toward the client, accumulating the round trip of
  // an Interest and a metadata packet over every hop crossed so far.
  std::int64_t roundTripUs = 0;
  double best = std::numeric_limits<double>::infinity();
  std::optional<NodeId> bestNode;
  for (std::size_t k = path.size(); k-- > 0;) {
    NodeId x = path[k];
    if (k + 1 < path.size()) {
      const Link& l = t.link_between(x, path[k + 1]);
      roundTripUs += link_delay(p.interest_size, l).us() + link_delay(p.metasize, l).us();
    }
    if (!computing(x)) {
      continue;
    }
    double te = 0.0;
    if (k + 1 < path.size()) {
      te = static_cast<double>(p.datasize) * static_cast<double>(roundTripUs) /
           static_cast<double>(p.metasize) / p.rtt_divisor;
    }
    double ce = p.cycles_per_op * oracle_ops(p.datasize, p.complexity) / t.node(x).cpu_hz * 1e6;
    double cost = te + ce;
    if (cost <= best) {
      best = cost;
      bestNode = x;
    }
  }
  if (!bestNode) {
    throw std::invalid_argument("no computing node on path");
  }
  return *bestNode;
}

} // namespace r2sim
