#pragma once

#include <optional>
#include <span>

#include "obisim/rng.hpp"
#include "obisim/types.hpp"

namespace obisim {

// Strategy weights of one normal agent. w1 weights the fundamental
// strategy, w2 the technical strategy, u the noise strategy. w1 and w2 are
// adjusted by the learning rule and stay inside [0, w_max]; u and tau are
// fixed at initialization for the whole run.
struct NormalAgentState {
  double w1 = 0.0;
  double w2 = 0.0;
  double u = 0.0;
  int tau = 1;  // technical lookback, in {1, ..., tau_max}

  friend bool operator==(const NormalAgentState&, const NormalAgentState&) = default;
};

// Model constants shared by every normal agent.
struct AgentParams {
  double w1_max = 1.0;
  double w2_max = 10.0;
  double u_max = 1.0;
  int tau_max = 10000;
  double sigma_eps = 0.06;
  double k_learn = 4.0;       // learning-rate constant
  double delta_learn = 0.01;  // per-weight reset probability
  double est = 0.003;         // order-price dispersion, P_sigma = P_e * est
  TimeStep t_learn = 10000;   // lookback of the learning-period return
  Tick tick_size = 1;
};

// Read-only view of the market price history. price_at(t) is the last
// trade price as of the end of step t; before the first trade and for
// t <= 0 it is the fundamental price (the initial market price equals the
// fundamental).
class MarketView {
 public:
  MarketView(Tick fundamental, std::span<const Tick> prices)
      : fundamental_(fundamental), prices_(prices) {}

  Tick price_at(TimeStep t) const {
    if (t <= 0) return fundamental_;
    return prices_[static_cast<std::size_t>(t - 1)];
  }
  Tick fundamental() const { return fundamental_; }

 private:
  Tick fundamental_;
  std::span<const Tick> prices_;  // index t-1 holds the price at step t
};

// The fundamental strategy expects the full log gap to P_f as its return;
// the technical strategy extrapolates the mean one-step return of its
// lookback window.
struct StrategyReturns {
  double r1 = 0.0;  // fundamental: ln(P_f / P^{t-1})
  double r2 = 0.0;  // technical:  ln(P^{t-1} / P^{t-1-tau}) / tau
};

struct ExpectedReturn {
  double re = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

struct OrderIntent {
  Side side;
  Tick price;
};

// Draw order per normal-agent turn (AgentTurn stream): q1, q2, two reset
// checks (each followed by a redraw only when it fires), then the noise
// term eps. The order-price draw comes from the OrderNoise stream.

// Initial weights are uniform on [0, w_max]; tau uniform on {1..tau_max}.
NormalAgentState init_agent(const AgentParams& params, Rng& init_rng);

// Noise-strategy shock. Drawn with mean -(u/(w1+w2+u)) * sigma_eps^2 / 2,
// which makes the noise strategy's price expectation unbiased under the
// exponential in the expected-price formula (a mean-zero shock would
// drift every agent's expected price upward by the lognormal mean).
double draw_noise(const NormalAgentState& state, const AgentParams& params, Rng& turn_rng);

StrategyReturns strategy_returns(const NormalAgentState& state, const MarketView& view,
                                 TimeStep t);

// re = (w1*r1 + w2*r2 + u*eps) / (w1 + w2 + u).
// Throws DegenerateWeights when all three weights are zero.
double expected_return_given(const NormalAgentState& state, double r1, double r2, double eps);

ExpectedReturn expected_return(const NormalAgentState& state, const AgentParams& params,
                               const MarketView& view, TimeStep t, Rng& turn_rng);

// One weight update step. Sign-concordant with the learning-period return
// r_l moves w toward w_max, discordant moves it toward 0; a zero on either
// side leaves w unchanged. Result is clamped to [0, w_max].
double learning_update(double w, double w_max, double r_i, double r_l, double k_learn,
                       double q);

// Full learning pass for one turn: updates w1 and w2 against
// r_l = ln(P^{t-1}/P^{t-1-t_l}) with independent q draws, then applies the
// per-weight reset with probability delta_learn. Runs before the order
// process.
void learn(NormalAgentState& state, double r1, double r2, const MarketView& view, TimeStep t,
           const AgentParams& params, Rng& turn_rng);

// Nearest tick, half away from zero. Returns 0 when the price is not
// representable as a positive tick count.
Tick round_to_tick(double price, Tick tick_size);

// Side/price decision given the pre-rounding order-price draw po around
// the expected price pe: below pe buys, above pe sells, exact tie or a
// rounded price below one tick skips the turn.
std::optional<OrderIntent> order_intent_given(double pe, double po, Tick tick_size);

// P_e = P^{t-1} * exp(re); P_o ~ Normal(P_e, P_e * est).
std::optional<OrderIntent> order_from_expectation(double re, const AgentParams& params,
                                                  const MarketView& view, TimeStep t,
                                                  Rng& order_rng);

}  // namespace obisim
