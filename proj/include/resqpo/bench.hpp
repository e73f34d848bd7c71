#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>
#define RESQPO_HAVE_FORK 1
#endif

#include "resqpo/overlaps.hpp"

namespace resqpo::bench {

struct Experiment {
  std::string name;
  Graph left;
  Graph right;
};

/// Chain/loop overlap experiments: P1 = (pi1, pi1), P2 = (pi2, lambda3),
/// P3 = (pi4, lambda5), P4 = (pi7, lambda8).
inline std::vector<Experiment> gcm2020_suite() {
  return {{"P1", graphs::path(1), graphs::path(1)},
          {"P2", graphs::path(2), graphs::cycle(3)},
          {"P3", graphs::path(4), graphs::cycle(5)},
          {"P4", graphs::path(7), graphs::cycle(8)}};
}

inline std::optional<std::vector<Experiment>> suite(const std::string& name) {
  if (name == "gcm2020") return gcm2020_suite();
  return std::nullopt;
}

struct Row {
  std::string experiment;
  Strategy strategy = Strategy::implicit;
  bool timed_out = false;
  std::optional<std::uint64_t> candidates;
  std::size_t correct = 0;
  double mean_seconds = 0;
  std::optional<long> peak_kib;
  std::string failure;  // non-empty if the run died
};

namespace detail {

// Runs the curation `repeats` times, each under its own deadline. Stops at
// the first timeout.
inline Row measure(const Experiment& x, Strategy st, const ForbiddenRelationSet& s, std::chrono::milliseconds timeout,
                   int repeats) {
  Row row;
  row.experiment = x.name;
  row.strategy = st;
  double total = 0;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      CurationResult r = curate(x.left, x.right, s, st, SearchLimits::within(timeout));
      row.correct = r.overlaps.size();
      row.candidates = st == Strategy::implicit ? std::nullopt : r.candidates;
    } catch (const search_timeout&) {
      row.timed_out = true;
      return row;
    }
    total += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  row.mean_seconds = total / repeats;
  return row;
}

inline std::string encode(const Row& r) {
  std::ostringstream o;
  o << r.timed_out << ' ' << (r.candidates ? std::to_string(*r.candidates) : "-") << ' ' << r.correct << ' '
    << r.mean_seconds;
  return o.str();
}

inline void decode(const std::string& line, Row& r) {
  std::istringstream in(line);
  std::string cand;
  in >> r.timed_out >> cand >> r.correct >> r.mean_seconds;
  if (!in) {
    r.failure = "no result from worker";
    return;
  }
  if (cand != "-") r.candidates = std::stoull(cand);
}

}  // namespace detail

/// Runs one experiment under one strategy. With `isolate` (and fork
/// available) the runs happen in a child process, so its peak resident set
/// is this row's alone; otherwise the whole process's high-water mark is
/// reported.
inline Row run(const Experiment& x, Strategy st, const ForbiddenRelationSet& s, std::chrono::milliseconds timeout,
               int repeats = 5, bool isolate = true) {
#ifdef RESQPO_HAVE_FORK
  if (isolate) {
    int fd[2];
    if (pipe(fd) == 0) {
      std::fflush(nullptr);
      const pid_t pid = fork();
      if (pid == 0) {
        close(fd[0]);
        const std::string msg = detail::encode(detail::measure(x, st, s, timeout, repeats)) + "\n";
        [[maybe_unused]] auto n = write(fd[1], msg.data(), msg.size());
        close(fd[1]);
        _exit(0);
      }
      if (pid > 0) {
        close(fd[1]);
        std::string buf;
        char chunk[256];
        ssize_t n;
        while ((n = read(fd[0], chunk, sizeof chunk)) > 0) buf.append(chunk, static_cast<std::size_t>(n));
        close(fd[0]);
        int status = 0;
        struct rusage usage {};
        wait4(pid, &status, 0, &usage);
        Row row;
        row.experiment = x.name;
        row.strategy = st;
        if (WIFEXITED(status) && WEXITSTATUS(status) == 0) detail::decode(buf, row);
        else row.failure = "worker exited abnormally";
        row.peak_kib = usage.ru_maxrss;
        return row;
      }
      close(fd[0]);
      close(fd[1]);
    }
  }
#endif
  Row row = detail::measure(x, st, s, timeout, repeats);
#ifdef RESQPO_HAVE_FORK
  struct rusage usage {};
  if (getrusage(RUSAGE_SELF, &usage) == 0) row.peak_kib = usage.ru_maxrss;
#endif
  return row;
}

inline std::string csv_header() {
  return "experiment,strategy,candidates,correct,wall_time_mean_over_5,peak_memory\n";
}

inline std::string csv_line(const Row& r) {
  std::ostringstream o;
  o << r.experiment << ',' << to_string(r.strategy) << ',';
  if (!r.failure.empty()) {
    o << "error,error,error,";
  } else if (r.timed_out) {
    o << "timeout,timeout,timeout,";
  } else {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.6f", r.mean_seconds);
    o << (r.candidates ? std::to_string(*r.candidates) : "n/a") << ',' << r.correct << ',' << secs << ',';
  }
  o << (r.peak_kib ? std::to_string(*r.peak_kib) + " KiB" : "unsupported") << '\n';
  return o.str();
}

}  // namespace resqpo::bench
