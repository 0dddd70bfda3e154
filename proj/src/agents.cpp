#include "obisim/agents.hpp"

#include <algorithm>
#include <cmath>

#include "obisim/errors.hpp"

namespace obisim {

NormalAgentState init_agent(const AgentParams& params, Rng& init_rng) {
  NormalAgentState state;
  state.w1 = init_rng.uniform(0.0, params.w1_max);
  state.w2 = init_rng.uniform(0.0, params.w2_max);
  state.u = init_rng.uniform(0.0, params.u_max);
  state.tau = init_rng.uniform_int(1, params.tau_max);
  return state;
}

StrategyReturns strategy_returns(const NormalAgentState& state, const MarketView& view,
                                 TimeStep t) {
  const double prev = static_cast<double>(view.price_at(t - 1));
  StrategyReturns r;
  r.r1 = std::log(static_cast<double>(view.fundamental()) / prev);
  r.r2 = std::log(prev / static_cast<double>(view.price_at(t - 1 - state.tau))) /
         static_cast<double>(state.tau);
  return r;
}

double expected_return_given(const NormalAgentState& state, double r1, double r2, double eps) {
  const double denom = state.w1 + state.w2 + state.u;
  if (denom <= 0.0) {
    throw DegenerateWeights("all strategy weights are zero");
  }
  return (state.w1 * r1 + state.w2 * r2 + state.u * eps) / denom;
}

double draw_noise(const NormalAgentState& state, const AgentParams& params, Rng& turn_rng) {
  const double denom = state.w1 + state.w2 + state.u;
  const double share = denom > 0.0 ? state.u / denom : 0.0;
  const double mean = -0.5 * share * params.sigma_eps * params.sigma_eps;
  return turn_rng.normal(mean, params.sigma_eps);
}

ExpectedReturn expected_return(const NormalAgentState& state, const AgentParams& params,
                               const MarketView& view, TimeStep t, Rng& turn_rng) {
  const StrategyReturns r = strategy_returns(state, view, t);
  const double eps = draw_noise(state, params, turn_rng);
  return ExpectedReturn{expected_return_given(state, r.r1, r.r2, eps), r.r1, r.r2};
}

double learning_update(double w, double w_max, double r_i, double r_l, double k_learn,
                       double q) {
  if (r_i == 0.0 || r_l == 0.0) return w;
  const double step = k_learn * std::abs(r_l) * q;
  const double next = ((r_i > 0.0) == (r_l > 0.0)) ? w + step * (w_max - w) : w - step * w;
  return std::clamp(next, 0.0, w_max);
}

void learn(NormalAgentState& state, double r1, double r2, const MarketView& view, TimeStep t,
           const AgentParams& params, Rng& turn_rng) {
  const double prev = static_cast<double>(view.price_at(t - 1));
  const double past = static_cast<double>(view.price_at(t - 1 - params.t_learn));
  const double r_l = std::log(prev / past);
  const double q1 = turn_rng.uniform01();
  const double q2 = turn_rng.uniform01();
  state.w1 = learning_update(state.w1, params.w1_max, r1, r_l, params.k_learn, q1);
  state.w2 = learning_update(state.w2, params.w2_max, r2, r_l, params.k_learn, q2);
  if (turn_rng.uniform01() < params.delta_learn) {
    state.w1 = turn_rng.uniform(0.0, params.w1_max);
  }
  if (turn_rng.uniform01() < params.delta_learn) {
    state.w2 = turn_rng.uniform(0.0, params.w2_max);
  }
}

Tick round_to_tick(double price, Tick tick_size) {
  const double units = price / static_cast<double>(tick_size);
  if (!(units > 0.0) || units >= 9.0e18) return 0;
  return static_cast<Tick>(std::llround(units)) * tick_size;
}

std::optional<OrderIntent> order_intent_given(double pe, double po, Tick tick_size) {
  if (po == pe) return std::nullopt;
  const Tick price = round_to_tick(po, tick_size);
  if (price < tick_size) return std::nullopt;
  return OrderIntent{po < pe ? Side::Buy : Side::Sell, price};
}

std::optional<OrderIntent> order_from_expectation(double re, const AgentParams& params,
                                                  const MarketView& view, TimeStep t,
                                                  Rng& order_rng) {
  const double prev = static_cast<double>(view.price_at(t - 1));
  const double pe = prev * std::exp(re);
  const double po = order_rng.normal(pe, pe * params.est);
  return order_intent_given(pe, po, params.tick_size);
}

}  // namespace obisim
