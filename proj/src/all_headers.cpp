// Compiled once to check that every public header stands on its own.
#include "thermoplate/assembly.hpp"
#include "thermoplate/config.hpp"
#include "thermoplate/errors.hpp"
#include "thermoplate/experiments.hpp"
#include "thermoplate/fem.hpp"
#include "thermoplate/linsolve.hpp"
#include "thermoplate/mesh.hpp"
#include "thermoplate/mms.hpp"
#include "thermoplate/model.hpp"
#include "thermoplate/norms.hpp"
#include "thermoplate/quadrature.hpp"
#include "thermoplate/stepper.hpp"
