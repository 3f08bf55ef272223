#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ecochain/model.hpp"
#include "ecochain/simulate.hpp"

namespace ecochain {

enum class Figure { Fig1, Fig2, Fig3, Fig4 };

Figure parse_figure(std::string_view name);  // "fig1" .. "fig4"
std::string_view figure_name(Figure fig);

// Published parameter sets. Fig1 is the Malthus model (K unused); the others
// share the logistic rates and differ in beta (Fig2) or f (Fig3).
Params figure_params(Figure fig);
Variant figure_variant(Figure fig);
Vec4 figure_initial_state(Figure fig);
IntegratorConfig figure_integrator(Figure fig);

// Attractor used for Figure 2. The caption's E4 = (0.3, 0.25, 0, 1.0) is not
// a zero of the vector field at the caption rates, and the closed-form E4
// has a negative predator component there; trajectories settle on E1.
inline const Vec4 kFig2Attractor{0.0, 0.962962962963, 0.0, 0.333333333333};
inline constexpr std::string_view kFig2Note =
    "note: the Figure 2 caption lists E4 = (0.3, 0.25, 0, 1.0); at the caption rates that point does not "
    "zero the vector field and the E4 closed form has P < 0, so the run is checked against the attained "
    "top-predator-free, disease-free state E1 = (0, 0.96296, 0, 0.33333) instead.";

inline constexpr double kFigureTolerance = 1e-3;
inline constexpr double kLongTermTolerance = 1e-5;
inline constexpr double kFig1MinSwing = 0.05;

struct FigureCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct FigureReport {
  Figure figure{};
  std::vector<FigureCheck> checks;
  std::vector<std::string> notes;
  Trajectory trajectory;
  bool passed() const;
};

/// Runs one figure's parameter set end to end and checks it against the
/// published (or, for Figure 2, derived) values.
FigureReport reproduce(Figure fig);

}  // namespace ecochain
