#include "skyroad/cutm.hpp"

#include <algorithm>

#include "skyroad/errors.hpp"

namespace skyroad {

std::string_view to_string(EventType type) {
  switch (type) {
    case EventType::request: return "request";
    case EventType::allocate: return "allocate";
    case EventType::defer: return "defer";
    case EventType::clear: return "clear";
    case EventType::check: return "check";
    case EventType::anomaly: return "anomaly";
    case EventType::arrive: return "arrive";
    case EventType::disrupt: return "disrupt";
    case EventType::overdue: return "overdue";
  }
  return "request";
}

Supervisor::Supervisor(const SkyroadGraph& graph, SupervisorConfig config) : graph_(&graph), config_(config) {
  if (config_.n_t <= 0) throw ValidationError("N_T must be positive");
  const std::size_t n = graph.node_count();
  in_v_.assign(n, 1);
  in_w_.assign(n, 1);
  in_wbar_.assign(n, 0);
  in_e_.assign(graph.edge_count(), 1);
  edge_live_.assign(graph.edge_count(), 1);
  w_count_ = n;
}

void Supervisor::submit(const RequestEvent& request) {
  if (request.submit_time < 0) throw ScenarioError("negative submit time for UAS " + std::to_string(request.uas_id));
  if (request.submit_time < k_) {
    throw ScenarioError("UAS " + std::to_string(request.uas_id) + " submitted for past step " +
                        std::to_string(request.submit_time));
  }
  if (request.submit_time < last_submit_) {
    throw ScenarioError("UAS " + std::to_string(request.uas_id) + " submitted out of order");
  }
  for (const auto& endpoint : {request.start, request.goal}) {
    if (endpoint && !graph_->contains(*endpoint)) {
      throw ScenarioError("UAS " + std::to_string(request.uas_id) + " references nonexistent segment " +
                          std::to_string(*endpoint));
    }
  }
  if (!known_uas_.insert(request.uas_id).second) {
    throw ScenarioError("duplicate UAS id " + std::to_string(request.uas_id));
  }
  last_submit_ = request.submit_time;
  queue_.push_back(request);
}

std::vector<SegmentId> Supervisor::accessible() const {
  std::vector<SegmentId> out;
  out.reserve(w_count_);
  for (std::size_t i = 0; i < in_w_.size(); ++i) {
    if (in_w_[i]) out.push_back(static_cast<SegmentId>(i));
  }
  return out;
}

void Supervisor::set_accessible(SegmentId id, bool accessible) {
  const auto i = static_cast<std::size_t>(id);
  if (!in_v_[i]) return;
  if (accessible && !in_w_[i]) {
    in_w_[i] = 1;
    in_wbar_[i] = 0;
    ++w_count_;
    --wbar_count_;
  } else if (!accessible && in_w_[i]) {
    in_w_[i] = 0;
    in_wbar_[i] = 1;
    --w_count_;
    ++wbar_count_;
  }
  for (auto span : {graph_->out_edges(id), graph_->in_edges(id)}) {
    for (std::uint32_t e : span) {
      const Edge& edge = graph_->edge(e);
      edge_live_[e] = in_e_[e] && in_w_[edge.from] && in_w_[edge.to];
    }
  }
}

void Supervisor::rebuild_live_edges() {
  for (std::size_t e = 0; e < graph_->edge_count(); ++e) {
    const Edge& edge = graph_->edge(e);
    edge_live_[e] = in_e_[e] && in_w_[edge.from] && in_w_[edge.to];
  }
}

std::vector<SegmentId> Supervisor::completed_segments() const {
  std::vector<SegmentId> out;
  for (const Reservation& r : reservations_) {
    if (r.retired) continue;
    const int end = r.status == ReservationStatus::active ? r.progress : r.path.hop_count;
    for (int p = r.released_upto; p < end; ++p) {
      const SegmentId id = r.path.segment_ids[static_cast<std::size_t>(p)];
      if (in_wbar_[id]) out.push_back(id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Supervisor::release() {
  std::size_t released = 0;
  for (Reservation& r : reservations_) {
    if (r.retired) continue;
    const int end = r.status == ReservationStatus::active ? r.progress : r.path.hop_count;
    for (int p = r.released_upto; p < end; ++p) {
      const SegmentId id = r.path.segment_ids[static_cast<std::size_t>(p)];
      if (in_wbar_[id]) {
        set_accessible(id, true);
        ++released;
      }
    }
    r.released_upto = end;
    if (r.status != ReservationStatus::active) r.retired = true;
  }
  return released;
}

std::optional<Reservation> Supervisor::handle_request(const RequestEvent& request,
                                                       std::vector<SupervisorEvent>* events) {
  auto defer = [&](const std::string& reason) -> std::optional<Reservation> {
    if (events != nullptr) events->push_back({EventType::defer, request.uas_id, {{"reason", reason}}});
    return std::nullopt;
  };

  std::optional<SegmentId> start = request.start;
  std::optional<SegmentId> goal = request.goal;
  if (!start || !goal) {
    if (!chooser_) return defer("no endpoints");
    const auto chosen = chooser_(*this, request.uas_id);
    if (!chosen) return defer("no endpoints with a live path");
    if (!start) start = chosen->first;
    if (!goal) goal = chosen->second;
  }
  if (!in_v(*start) || !in_v(*goal)) return defer("endpoint removed from V");

  std::optional<Path> path;
  try {
    path = astar(live(), {*start, *goal, k_});
  } catch (const StartOrGoalAllocatedError&) {
    return defer("start or goal allocated");
  }
  if (!path) return defer("no path");

  Reservation r;
  r.uas_id = request.uas_id;
  r.path = std::move(*path);
  r.t_request = request.submit_time;
  r.t_alloc = k_;
  r.t_max = time_budget(r.path);
  r.t_due = k_ + r.t_max;
  for (SegmentId id : r.path.segment_ids) set_accessible(id, false);
  t_check_.insert(r.t_due);
  allocation_order_.push_back(r.uas_id);
  reservations_.push_back(r);
  if (events != nullptr) {
    events->push_back({EventType::allocate,
                       r.uas_id,
                       {{"start", *start},
                        {"goal", *goal},
                        {"hops", r.path.hop_count},
                        {"cost", r.path.total_cost},
                        {"t_max", r.t_max},
                        {"t_check", r.t_due}}});
  }
  return r;
}

void Supervisor::handle_anomaly(const Anomaly& anomaly, std::vector<SupervisorEvent>* events) {
  std::vector<char> removed(in_v_.size(), 0);
  std::size_t nodes = 0;
  for (SegmentId id : anomaly.nodes) {
    if (!graph_->contains(id)) throw ScenarioError("anomaly references nonexistent segment " + std::to_string(id));
    const auto i = static_cast<std::size_t>(id);
    if (!in_v_[i]) continue;
    removed[i] = 1;
    ++nodes;
    if (in_w_[i]) --w_count_;
    if (in_wbar_[i]) --wbar_count_;
    in_v_[i] = in_w_[i] = in_wbar_[i] = 0;
  }
  std::size_t edges = 0;
  for (std::size_t e = 0; e < graph_->edge_count(); ++e) {
    const Edge& edge = graph_->edge(e);
    if (in_e_[e] && (removed[edge.from] || removed[edge.to])) {
      in_e_[e] = 0;
      ++edges;
    }
  }
  for (const Edge& edge : anomaly.edges) {
    const auto e = graph_->find_edge(edge.from, edge.to);
    if (!e) {
      throw ScenarioError("anomaly references nonexistent edge (" + std::to_string(edge.from) + ", " +
                          std::to_string(edge.to) + ")");
    }
    if (in_e_[*e]) {
      in_e_[*e] = 0;
      ++edges;
    }
  }
  rebuild_live_edges();

  for (Reservation& r : reservations_) {
    if (r.retired || r.status != ReservationStatus::active) continue;
    for (int p = r.progress; p < r.path.hop_count; ++p) {
      if (removed[r.path.segment_ids[static_cast<std::size_t>(p)]]) {
        r.status = ReservationStatus::disrupted;
        if (events != nullptr) {
          events->push_back({EventType::disrupt, r.uas_id, {{"segment", r.path.segment_ids[p]}, {"index", p}}});
        }
        break;
      }
    }
  }
  if (events != nullptr) {
    events->push_back({EventType::anomaly, -1, {{"nodes_removed", nodes}, {"edges_removed", edges}}});
  }
}

void Supervisor::process_queue(bool release_event, std::vector<SupervisorEvent>& events) {
  if (release_event) head_blocked_ = false;
  if (head_blocked_) return;
  std::size_t served = 0;
  while (served < queue_.size() && queue_[served].submit_time <= k_) {
    if (!handle_request(queue_[served], &events)) {
      head_blocked_ = true;
      break;
    }
    ++served;
  }
  queue_.erase(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(served));
}

void Supervisor::advance(std::vector<SupervisorEvent>& events) {
  for (Reservation& r : reservations_) {
    if (r.status != ReservationStatus::active) continue;
    if (r.progress + 1 < r.path.hop_count) ++r.progress;
    if (r.progress + 1 == r.path.hop_count) {
      r.status = ReservationStatus::arrived;
      r.t_arrive = k_ + 1;
      events.push_back({EventType::arrive, r.uas_id, {{"t_arrive", r.t_arrive}, {"t_check", r.t_due}}});
    } else if (k_ + 1 > r.t_due && !r.overdue_reported) {
      r.overdue_reported = true;
      events.push_back({EventType::overdue, r.uas_id, {{"t_check", r.t_due}}});
    }
  }
}

StepRecord Supervisor::step(const std::vector<RequestEvent>& arrivals, const Anomaly* anomaly) {
  if (finish_) throw ValidationError("supervisor has been stopped");
  StepRecord record;
  record.k = k_;
  for (const RequestEvent& request : arrivals) {
    submit(request);
    record.events.push_back({EventType::request, request.uas_id, {{"submit_time", request.submit_time}}});
  }

  const bool periodic = k_ % config_.n_t == 0;
  const bool due = t_check_.count(k_) > 0;
  if (periodic || due) {
    const std::size_t released = release();
    if (periodic) record.events.push_back({EventType::clear, -1, {{"released", released}}});
    if (due) record.events.push_back({EventType::check, -1, {{"released", periodic ? 0 : released}}});
  }
  process_queue(periodic || due, record.events);

  for (const Reservation& r : reservations_) {
    if (r.status == ReservationStatus::active) record.positions.push_back({r.uas_id, r.position()});
  }
  std::sort(record.positions.begin(), record.positions.end());
  record.w_size = w_count_;
  record.wbar_size = wbar_count_;

  advance(record.events);
  if (anomaly != nullptr) handle_anomaly(*anomaly, &record.events);
  ++k_;
  return record;
}

std::vector<std::string> Supervisor::check_invariants() const {
  std::vector<std::string> out;
  const std::size_t n = graph_->node_count();
  std::size_t w = 0;
  std::size_t wbar = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_w_[i] && in_wbar_[i]) out.push_back("segment " + std::to_string(i) + " in both W and W_bar");
    if (in_v_[i] && !in_w_[i] && !in_wbar_[i]) out.push_back("segment " + std::to_string(i) + " in V but not W or W_bar");
    if (!in_v_[i] && (in_w_[i] || in_wbar_[i])) out.push_back("segment " + std::to_string(i) + " outside V is tracked");
    w += in_w_[i] != 0;
    wbar += in_wbar_[i] != 0;
  }
  if (w != w_count_ || wbar != wbar_count_) out.push_back("W/W_bar counters out of sync");
  for (std::size_t e = 0; e < graph_->edge_count(); ++e) {
    const Edge& edge = graph_->edge(e);
    const bool induced = in_e_[e] && in_w_[edge.from] && in_w_[edge.to];
    if (induced != (edge_live_[e] != 0)) {
      out.push_back("edge (" + std::to_string(edge.from) + ", " + std::to_string(edge.to) + ") X mismatch");
    }
  }
  std::vector<int> holder(n, -1);
  for (const Reservation& r : reservations_) {
    if (r.retired) continue;
    for (int p = r.released_upto; p < r.path.hop_count; ++p) {
      const SegmentId id = r.path.segment_ids[static_cast<std::size_t>(p)];
      if (!in_v_[id]) continue;
      if (!in_wbar_[id]) out.push_back("UAS " + std::to_string(r.uas_id) + " holds " + std::to_string(id) + " not in W_bar");
      if (holder[id] >= 0) {
        out.push_back("segment " + std::to_string(id) + " held by UAS " + std::to_string(holder[id]) + " and " +
                      std::to_string(r.uas_id));
      }
      holder[id] = r.uas_id;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (in_wbar_[i] && holder[i] < 0) out.push_back("segment " + std::to_string(i) + " in W_bar without a holder");
  }
  return out;
}

}  // namespace skyroad
