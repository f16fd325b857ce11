#include "preach/bench.hpp"

#include "preach/error.hpp"
#include "preach/query.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <new>
#include <ostream>
#include <thread>

namespace preach {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point start, Clock::time_point stop) {
  return std::chrono::duration<double, std::nano>(stop - start).count();
}

template <typename F> double best_of_ms(std::uint32_t reps, F &&f) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < std::max(reps, 1u); ++i) {
    const auto start = Clock::now();
    f();
    best = std::min(best, elapsed_ns(start, Clock::now()) / 1e6);
  }
  return best;
}

using Runner = std::function<QueryStats(SearchScratch &, QueryPair)>;

// Index and condensed dag shared by all algorithms of one run.
struct Prepared {
  ReachIndex index;
  double index_ms = 0;
  double condense_ms = 0;
};

Prepared prepare(const Graph &graph, std::uint32_t reps) {
  Prepared p;
  p.index_ms = best_of_ms(reps, [&] { p.index = build_index(graph); });
  CondensedDag scratch_dag;
  p.condense_ms = best_of_ms(reps, [&] { scratch_dag = condense(graph); });
  return p;
}

// The index's config is set by the caller before the runner is used.
Runner make_runner(Algorithm algo, const ReachIndex &index) {
  switch (algo) {
  case Algorithm::Bfs:
    return [&index](SearchScratch &scratch, QueryPair q) {
      return bfs_search(index.dag(), scratch, index.component_of(q.s),
                        index.component_of(q.t));
    };
  case Algorithm::BidirBfs:
    return [&index](SearchScratch &scratch, QueryPair q) {
      return bidir_bfs_query(index.dag(), scratch, index.component_of(q.s),
                             index.component_of(q.t));
    };
  default:
    return [&index](SearchScratch &scratch, QueryPair q) {
      return query(index, scratch, q.s, q.t);
    };
  }
}

double percentile(std::vector<double> &times, double q) {
  if (times.empty())
    return 0;
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(times.size())));
  const std::size_t k = std::min(times.size() - 1, rank == 0 ? 0 : rank - 1);
  std::nth_element(times.begin(), times.begin() + static_cast<long>(k),
                   times.end());
  return times[k];
}

void check_agreement(std::vector<char> &reference, Algorithm &reference_algo,
                     bool &have_reference, Algorithm algo,
                     const std::vector<char> &results,
                     const Workload &workload) {
  if (!have_reference) {
    reference = results;
    reference_algo = algo;
    have_reference = true;
    return;
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i] != reference[i]) {
      const QueryPair q = workload.pairs[i];
      throw Error("algorithms " + std::string(to_string(reference_algo)) +
                  " and " + std::string(to_string(algo)) +
                  " disagree on pair (" + std::to_string(q.s) + "," +
                  std::to_string(q.t) + ")");
    }
  }
}

std::string format_double(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

} // namespace

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
  case Algorithm::Preach:
    return "preach";
  case Algorithm::RchOnly:
    return "rch_only";
  case Algorithm::LevelsOnly:
    return "levels_only";
  case Algorithm::DfsOnly:
    return "dfs_only";
  case Algorithm::Bfs:
    return "bfs";
  case Algorithm::BidirBfs:
    return "bidir_bfs";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::Preach, Algorithm::RchOnly,
                      Algorithm::LevelsOnly, Algorithm::DfsOnly,
                      Algorithm::Bfs, Algorithm::BidirBfs})
    if (to_string(a) == name)
      return a;
  throw InvalidArgument("unknown algorithm: " + std::string(name));
}

std::vector<Algorithm> parse_algorithms(std::string_view names) {
  std::vector<Algorithm> out;
  while (!names.empty()) {
    const std::size_t comma = names.find(',');
    const std::string_view name = names.substr(0, comma);
    if (!name.empty())
      out.push_back(parse_algorithm(name));
    if (comma == std::string_view::npos)
      break;
    names.remove_prefix(comma + 1);
  }
  if (out.empty())
    throw InvalidArgument("no algorithm given");
  return out;
}

std::optional<HeuristicConfig> heuristics_of(Algorithm algo) noexcept {
  switch (algo) {
  case Algorithm::Preach:
    return HeuristicConfig{true, true, true};
  case Algorithm::RchOnly:
    return HeuristicConfig{true, false, false};
  case Algorithm::LevelsOnly:
    return HeuristicConfig{false, true, false};
  case Algorithm::DfsOnly:
    return HeuristicConfig{false, false, true};
  default:
    return std::nullopt;
  }
}

std::string to_csv_row(const BenchRecord &r) {
  return r.graph + ',' + std::string(to_string(r.algorithm)) + ',' +
         std::string(to_string(r.kind)) + ',' + std::to_string(r.count) +
         ',' + format_double(r.mean_ns, 1) + ',' +
         format_double(r.median_ns, 1) + ',' + format_double(r.p99_ns, 1) +
         ',' + format_double(r.max_ns, 1) + ',' +
         format_double(r.mean_visited, 3) + ',' +
         format_double(r.construction_ms, 3) + ',' +
         std::to_string(r.footprint_bytes);
}

std::vector<BenchRecord> run_bench(const Graph &graph,
                                   const BenchConfig &config) {
  if (config.count == 0)
    throw InvalidArgument("workload count must be at least 1");
  const Workload workload =
      gen_workload(graph, config.kind, config.count, config.seed);
  return run_bench(graph, config, workload);
}

std::vector<BenchRecord> run_bench(const Graph &graph,
                                   const BenchConfig &config,
                                   const Workload &workload) {
  if (workload.pairs.empty())
    throw InvalidArgument("workload count must be at least 1");
  if (config.algorithms.empty())
    throw InvalidArgument("no algorithm given");
  for (const QueryPair &q : workload.pairs)
    if (q.s >= graph.node_count() || q.t >= graph.node_count())
      throw InvalidArgument("workload node out of range");

  Prepared prepared = prepare(graph, config.repetitions);
  ReachIndex &index = prepared.index;
  const std::size_t count = workload.pairs.size();

  std::vector<BenchRecord> records;
  std::vector<char> reference;
  Algorithm reference_algo{};
  bool have_reference = false;

  for (Algorithm algo : config.algorithms) {
    const auto heuristics = heuristics_of(algo);
    if (heuristics)
      index.set_config(*heuristics);
    const Runner run = make_runner(algo, index);

    BenchRecord rec;
    rec.graph = config.graph_name;
    rec.algorithm = algo;
    rec.kind = workload.kind;
    rec.count = static_cast<std::uint32_t>(count);
    rec.construction_ms =
        heuristics ? prepared.index_ms : prepared.condense_ms;
    rec.footprint_bytes = heuristics ? index_footprint(index) : 0;

    std::vector<char> results(count);
    std::uint64_t visited = 0;

    if (config.threads > 1) {
      const std::uint32_t workers = config.threads;
      std::vector<std::uint64_t> shard_visited(workers, 0);
      std::vector<std::thread> pool;
      const auto start = Clock::now();
      for (std::uint32_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          SearchScratch scratch(index.node_count());
          for (std::size_t i = w; i < count; i += workers) {
            const QueryStats st = run(scratch, workload.pairs[i]);
            results[i] = st.result;
            shard_visited[w] += st.visited_fwd + st.visited_bwd;
          }
        });
      }
      for (auto &t : pool)
        t.join();
      rec.mean_ns = elapsed_ns(start, Clock::now()) / double(count);
      for (std::uint64_t v : shard_visited)
        visited += v;
    } else {
      SearchScratch scratch(index.node_count());
      // Batch timing for the mean.
      const auto start = Clock::now();
      for (std::size_t i = 0; i < count; ++i) {
        const QueryStats st = run(scratch, workload.pairs[i]);
        results[i] = st.result;
        visited += st.visited_fwd + st.visited_bwd;
      }
      rec.mean_ns = elapsed_ns(start, Clock::now()) / double(count);

      // Second pass with per-query timing for the latency percentiles.
      std::vector<double> times(count);
      for (std::size_t i = 0; i < count; ++i) {
        const auto t0 = Clock::now();
        const QueryStats st = run(scratch, workload.pairs[i]);
        times[i] = elapsed_ns(t0, Clock::now());
        if (st.result != bool(results[i]))
          throw Error("nondeterministic answer from " +
                      std::string(to_string(algo)));
      }
      rec.max_ns = *std::max_element(times.begin(), times.end());
      rec.p99_ns = percentile(times, 0.99);
      rec.median_ns = percentile(times, 0.5);
    }
    rec.mean_visited = double(visited) / double(count);
    check_agreement(reference, reference_algo, have_reference, algo, results,
                    workload);
    records.push_back(std::move(rec));
  }
  return records;
}

DistributionSummary run_distribution(const Graph &graph,
                                     const BenchConfig &config) {
  if (config.count == 0)
    throw InvalidArgument("workload count must be at least 1");
  if (config.algorithms.empty())
    throw InvalidArgument("no algorithm given");
  const Workload workload =
      gen_workload(graph, config.kind, config.count, config.seed);
  Prepared prepared = prepare(graph, 1);
  ReachIndex &index = prepared.index;

  DistributionSummary summary;
  std::vector<char> reference;
  Algorithm reference_algo{};
  bool have_reference = false;
  for (Algorithm algo : config.algorithms) {
    if (const auto heuristics = heuristics_of(algo))
      index.set_config(*heuristics);
    const Runner run = make_runner(algo, index);
    SearchScratch scratch(index.node_count());
    std::vector<char> results(workload.pairs.size());
    std::vector<double> times;
    times.reserve(workload.pairs.size());
    for (std::size_t i = 0; i < workload.pairs.size(); ++i) {
      const QueryPair q = workload.pairs[i];
      const auto t0 = Clock::now();
      const QueryStats st = run(scratch, q);
      const double ns = elapsed_ns(t0, Clock::now());
      results[i] = st.result;
      times.push_back(ns);
      summary.rows.push_back(
          {algo, static_cast<std::uint32_t>(i), q, st.result, ns});
    }
    check_agreement(reference, reference_algo, have_reference, algo, results,
                    workload);
    const double max = *std::max_element(times.begin(), times.end());
    const double median = percentile(times, 0.5);
    summary.max_over_median.push_back(median > 0 ? max / median : 0.0);
  }
  return summary;
}

void write_distribution_csv(const DistributionSummary &summary,
                            std::string_view graph_name, std::ostream &out) {
  out << kDistributionCsvHeader << '\n';
  for (const DistributionRow &r : summary.rows)
    out << graph_name << ',' << to_string(r.algorithm) << ',' << r.query
        << ',' << r.pair.s << ',' << r.pair.t << ',' << (r.result ? 1 : 0)
        << ',' << format_double(r.time_ns, 1) << '\n';
}

std::vector<ScalingPoint> run_scaling(ScalingFamily family,
                                      const ScalingParams &params,
                                      std::uint64_t seed) {
  std::vector<std::pair<NodeId, std::uint64_t>> grid;
  if (family == ScalingFamily::Density) {
    for (std::uint64_t d : {2, 4, 8, 16, 32, 64})
      grid.emplace_back(params.nodes, d * params.nodes);
  } else {
    std::uint64_t n = 1;
    for (std::uint32_t k = 0; k < params.min_exp; ++k)
      n *= 10;
    for (std::uint32_t k = params.min_exp; k <= params.max_exp; ++k, n *= 10)
      grid.emplace_back(static_cast<NodeId>(n), params.size_density * n);
  }

  std::vector<ScalingPoint> points;
  for (const auto &[n, m_target] : grid) {
    ScalingPoint point;
    point.n = n;
    try {
      const Graph graph = gen_random_dag(n, m_target, seed);
      point.m = graph.edge_count();
      point.density = double(point.m) / double(n);
      ReachIndex index;
      point.construction_ms =
          best_of_ms(params.repetitions, [&] { index = build_index(graph); });
      point.construction_ns_per_edge =
          point.m == 0 ? 0.0 : point.construction_ms * 1e6 / double(point.m);
      if (params.query_count > 0 && n >= 2) {
        const Workload w = gen_workload(graph, WorkloadKind::Random,
                                        params.query_count, seed);
        SearchScratch scratch(index.node_count());
        std::uint64_t sink = 0;
        const auto start = Clock::now();
        for (const QueryPair &q : w.pairs)
          sink += query(index, scratch, q.s, q.t).result;
        point.mean_query_ns =
            elapsed_ns(start, Clock::now()) / double(w.pairs.size());
        (void)sink;
      }
    } catch (const std::bad_alloc &) {
      point.status = "out_of_memory";
    } catch (const std::length_error &) {
      point.status = "out_of_memory";
    }
    points.push_back(std::move(point));
  }
  return points;
}

std::string to_csv_row(ScalingFamily family, const ScalingPoint &p) {
  return std::string(family == ScalingFamily::Density ? "density" : "size") +
         ',' + std::to_string(p.n) + ',' + std::to_string(p.m) + ',' +
         format_double(p.density, 4) + ',' +
         format_double(p.construction_ms, 3) + ',' +
         format_double(p.construction_ns_per_edge, 3) + ',' +
         format_double(p.mean_query_ns, 1) + ',' + p.status;
}

} // namespace preach
