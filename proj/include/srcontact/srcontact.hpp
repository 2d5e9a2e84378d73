#pragma once

#include "srcontact/errors.hpp"
#include "srcontact/calculus/evaluate.hpp"
#include "srcontact/calculus/expr.hpp"
#include "srcontact/calculus/jet.hpp"
#include "srcontact/calculus/jet_linalg.hpp"
#include "srcontact/calculus/parser.hpp"
#include "srcontact/forms/forms.hpp"
#include "srcontact/contact/frame.hpp"
#include "srcontact/contact/spectrum.hpp"
#include "srcontact/contact/structure.hpp"
#include "srcontact/connection/connection.hpp"
#include "srcontact/connection/promotion.hpp"
#include "srcontact/connection/tensor.hpp"
#include "srcontact/tw3d/tanaka_webster.hpp"
#include "srcontact/app/registry.hpp"
#include "srcontact/app/report.hpp"
#include "srcontact/app/sampling.hpp"
#include "srcontact/app/spec.hpp"
#include "srcontact/app/suites.hpp"
