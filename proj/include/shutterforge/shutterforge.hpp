#ifndef SHUTTERFORGE_SHUTTERFORGE_HPP
#define SHUTTERFORGE_SHUTTERFORGE_HPP

#include "shutterforge/error.hpp"
#include "shutterforge/tensor.hpp"
#include "shutterforge/sft.hpp"
#include "shutterforge/png_io.hpp"
#include "shutterforge/rng.hpp"
#include "shutterforge/parallel.hpp"
#include "shutterforge/synthesis.hpp"
#include "shutterforge/perturbation.hpp"
#include "shutterforge/encoding.hpp"
#include "shutterforge/flowops.hpp"
#include "shutterforge/distillation.hpp"
#include "shutterforge/metrics.hpp"
#include "shutterforge/dataset.hpp"

#endif  // SHUTTERFORGE_SHUTTERFORGE_HPP
