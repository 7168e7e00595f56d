#include "regenlab/overlay.hpp"

#include <algorithm>
#include <sstream>

#include "regenlab/errors.hpp"

namespace regenlab {

OverlayNetwork::OverlayNetwork(int providers) : d_(providers) {
  if (providers < 1) throw Error(Errc::InvalidParams, "overlay needs at least one provider");
  c_.assign(std::size_t(d_ + 1) * (d_ + 1), 0.0);
}

std::size_t OverlayNetwork::idx(int from, int to) const {
  if (from < 0 || from > d_ || to < 0 || to > d_)
    throw Error(Errc::InvalidParams, "overlay node index out of range");
  return std::size_t(from) * (d_ + 1) + to;
}

void OverlayNetwork::set_cap(int from, int to, double mbps) {
  if (mbps < 0) throw Error(Errc::InvalidParams, "capacity must be non-negative");
  c_[idx(from, to)] = mbps;
}

void OverlayNetwork::set_sym(int a, int b, double mbps) {
  set_cap(a, b, mbps);
  set_cap(b, a, mbps);
}

CapacityVector OverlayNetwork::direct_capacities() const {
  CapacityVector out;
  out.reserve(d_);
  for (int i = 1; i <= d_; ++i) out.push_back(cap(i, 0));
  return out;
}

double OverlayNetwork::max_capacity() const {
  return *std::max_element(c_.begin(), c_.end());
}

std::string OverlayNetwork::to_text() const {
  std::ostringstream os;
  os << d_ + 1 << "\n";
  for (int i = 0; i <= d_; ++i) {
    for (int j = 0; j <= d_; ++j) {
      if (j) os << ' ';
      os << cap(i, j);
    }
    os << "\n";
  }
  return os.str();
}

OverlayNetwork OverlayNetwork::from_text(const std::string& text) {
  std::istringstream is(text);
  int n = 0;
  if (!(is >> n) || n < 2) throw Error(Errc::BadConfig, "overlay text: bad node count");
  OverlayNetwork net(n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = 0;
      if (!(is >> v)) throw Error(Errc::BadConfig, "overlay text: truncated matrix");
      if (v < 0) throw Error(Errc::BadConfig, "overlay text: negative capacity");
      net.set_cap(i, j, v);
    }
  }
  return net;
}

OverlayNetwork builtin_topology(const std::string& name) {
  if (name == "fig1" || name == "fig9") {
    // Four providers around newcomer 0; the only inter-provider link joins
    // providers 4 and 1.
    OverlayNetwork net(4);
    net.set_sym(1, 0, 70);
    net.set_sym(2, 0, 50);
    net.set_sym(3, 0, 20);
    net.set_sym(4, 0, 10);
    net.set_sym(4, 1, 35);
    return net;
  }
  if (name == "example1") {
    OverlayNetwork net(4);
    net.set_sym(1, 0, 1);
    net.set_sym(2, 0, 1);
    net.set_sym(3, 0, 4);
    net.set_sym(4, 0, 4);
    return net;
  }
  throw Error(Errc::BadConfig, "unknown topology name: " + name);
}

}  // namespace regenlab
