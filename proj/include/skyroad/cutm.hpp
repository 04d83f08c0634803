#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "skyroad/planner.hpp"
#include "skyroad/skyroads.hpp"

namespace skyroad {

struct RequestEvent {
  int uas_id = 0;
  std::optional<SegmentId> start;  // drawn by the endpoint chooser when absent
  std::optional<SegmentId> goal;
  int submit_time = 0;
};

enum class ReservationStatus { active, arrived, disrupted };

struct Reservation {
  int uas_id = 0;
  Path path;
  int t_request = 0;  // submission step
  int t_alloc = 0;
  int t_max = 0;
  int t_due = 0;  // t_alloc + t_max
  int progress = 0;
  int released_upto = 0;
  int t_arrive = -1;
  ReservationStatus status = ReservationStatus::active;
  bool retired = false;  // arrived or disrupted and fully released
  bool overdue_reported = false;

  SegmentId position() const { return path.segment_ids[static_cast<std::size_t>(progress)]; }
};

enum class EventType { request, allocate, defer, clear, check, anomaly, arrive, disrupt, overdue };
std::string_view to_string(EventType type);

struct SupervisorEvent {
  EventType type = EventType::request;
  int uas_id = -1;
  nlohmann::json payload = nlohmann::json::object();
};

struct StepRecord {
  int k = 0;
  // UAS on their current segment at time k (after allocation, before motion).
  std::vector<std::pair<int, SegmentId>> positions;
  std::size_t w_size = 0;
  std::size_t wbar_size = 0;
  std::vector<SupervisorEvent> events;
};

struct Anomaly {
  std::vector<SegmentId> nodes;
  std::vector<Edge> edges;
};

struct SupervisorConfig {
  int n_t = 50;
};

class Supervisor;

// Supplies endpoints for a request that carries none. Returning nullopt
// defers the request.
using EndpointChooser = std::function<std::optional<std::pair<SegmentId, SegmentId>>(const Supervisor&, int uas_id)>;

// Minimum time budget for a path.
inline int time_budget(const Path& path) { return std::max(1, path.hop_count - 1); }

// FCFS corridor allocation over G(W, X) with periodic and due-time release.
class Supervisor {
 public:
  explicit Supervisor(const SkyroadGraph& graph, SupervisorConfig config = {});

  void set_endpoint_chooser(EndpointChooser chooser) { chooser_ = std::move(chooser); }

  int time() const { return k_; }
  bool finished() const { return finish_; }
  void request_stop() { finish_ = true; }
  const SkyroadGraph& graph() const { return *graph_; }
  const SupervisorConfig& config() const { return config_; }

  // Queues a request. Throws ScenarioError for unknown segments, a submit
  // time in the past or out of order, or a duplicate UAS id.
  void submit(const RequestEvent& request);

  // One pass of the control loop at time k: completed-segment release on
  // clear/check steps, FCFS allocation, motion, anomalies, then k + 1.
  StepRecord step(const std::vector<RequestEvent>& arrivals = {}, const Anomaly* anomaly = nullptr);

  // F: segments already passed by active UAS plus every unreleased segment
  // of arrived or disrupted ones, sorted.
  std::vector<SegmentId> completed_segments() const;
  // Returns F to W and rebuilds X. Returns the number of released segments.
  std::size_t release();
  // Tries to allocate the request at the current step. Returns the
  // reservation on success, nullopt when deferred.
  std::optional<Reservation> handle_request(const RequestEvent& request, std::vector<SupervisorEvent>* events = nullptr);
  // Removes nodes and edges from V and E; reservations that lose a
  // segment they still need are marked disrupted.
  void handle_anomaly(const Anomaly& anomaly, std::vector<SupervisorEvent>* events = nullptr);

  LiveGraph live() const { return {graph_, in_w_, edge_live_}; }
  bool in_v(SegmentId id) const { return in_v_[static_cast<std::size_t>(id)] != 0; }
  bool in_w(SegmentId id) const { return in_w_[static_cast<std::size_t>(id)] != 0; }
  bool in_wbar(SegmentId id) const { return in_wbar_[static_cast<std::size_t>(id)] != 0; }
  bool in_e(std::size_t edge) const { return in_e_[edge] != 0; }
  bool in_x(std::size_t edge) const { return edge_live_[edge] != 0; }
  std::size_t w_size() const { return w_count_; }
  std::size_t wbar_size() const { return wbar_count_; }
  std::vector<SegmentId> accessible() const;
  const std::multiset<int>& t_check() const { return t_check_; }
  const std::vector<Reservation>& reservations() const { return reservations_; }
  std::size_t pending() const { return queue_.size(); }
  // Order in which requests were allocated.
  const std::vector<int>& allocation_order() const { return allocation_order_; }

  // Partition, induced edge set, conservation and mutual exclusion checks.
  std::vector<std::string> check_invariants() const;

 private:
  void rebuild_live_edges();
  void set_accessible(SegmentId id, bool accessible);
  void process_queue(bool release_event, std::vector<SupervisorEvent>& events);
  void advance(std::vector<SupervisorEvent>& events);

  const SkyroadGraph* graph_;
  SupervisorConfig config_;
  EndpointChooser chooser_;
  int k_ = 0;
  bool finish_ = false;
  std::vector<char> in_v_, in_w_, in_wbar_;
  std::vector<char> in_e_, edge_live_;
  std::size_t w_count_ = 0;
  std::size_t wbar_count_ = 0;
  std::multiset<int> t_check_;
  std::vector<RequestEvent> queue_;
  bool head_blocked_ = false;
  std::vector<Reservation> reservations_;
  std::vector<int> allocation_order_;
  std::set<int> known_uas_;
  int last_submit_ = 0;
};

}  // namespace skyroad
