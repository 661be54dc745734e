#pragma once
#include <hiersparse/core/errors.hpp>
#include <hiersparse/core/types.hpp>
#include <hiersparse/em/fit.hpp>
#include <hiersparse/em/objective.hpp>
#include <hiersparse/em/problem.hpp>
#include <hiersparse/model/density.hpp>
#include <hiersparse/model/moments.hpp>
#include <hiersparse/model/prior.hpp>
#include <hiersparse/model/weights.hpp>
#include <hiersparse/sim/curves.hpp>
#include <hiersparse/sim/experiment.hpp>
#include <hiersparse/sim/generate.hpp>
#include <hiersparse/sim/metrics.hpp>
#include <hiersparse/sim/presets.hpp>
#include <hiersparse/sim/rng.hpp>
#include <hiersparse/solvers/dataset.hpp>
#include <hiersparse/solvers/glasso.hpp>
#include <hiersparse/solvers/group.hpp>
#include <hiersparse/solvers/kkt.hpp>
#include <hiersparse/solvers/linear.hpp>
#include <hiersparse/solvers/logistic.hpp>
#include <hiersparse/solvers/options.hpp>
#include <hiersparse/solvers/prox.hpp>
#include <hiersparse/solvers/proximal_gradient.hpp>
