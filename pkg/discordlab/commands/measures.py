from discordlab.config import Config
from discordlab.models.reports import Route
from discordlab.services.file_service import StateFileService, parse_dims
from discordlab.services.measure_service import MeasureService, UnknownRoute
from discordlab.utils.formatting import render


def register(subparsers, parents):
    parser = subparsers.add_parser('measures', parents=parents,
                                   help='Negativities, D2 per route and D1 bounds of a state')
    parser.add_argument('state', help='StateFile path')
    parser.add_argument('--routes', default=None,
                        help='Comma-separated subset of closed_form,optimizer,fixed_basis')
    parser.add_argument('--repartition', type=parse_dims, default=None, metavar='MxN',
                        help='Reinterpret the state under another bipartition')
    parser.set_defaults(handler=cmd_measures)


def _routes(text, m):
    if text:
        try:
            return [Route(name.strip()) for name in text.split(',') if name.strip()]
        except ValueError:
            raise UnknownRoute(f"Unknown route in {text!r}; choose from closed_form, optimizer, fixed_basis")
    routes = [Route.OPTIMIZER, Route.FIXED_BASIS]
    if m == 2:
        routes.insert(0, Route.CLOSED_FORM)
    return routes


def measures_report(rho, routes) -> dict:
    d2 = {}
    for route in routes:
        estimate = MeasureService.gd2(rho, route, seed=Config.DEFAULT_SEED)
        d2[route.value] = {
            'value': estimate.value,
            'normalized': MeasureService.gd_normalized(estimate.value, rho.m) if rho.m >= 2 else None,
            'converged': estimate.converged
        }
    bounds = MeasureService.gd1_upper_bounds(rho, seed=Config.DEFAULT_SEED)
    best_label, best_bound = MeasureService.best_gd1_bound(bounds)
    return {
        'dims': list(rho.dims),
        'seed': Config.DEFAULT_SEED,
        'negativity_witness': MeasureService.negativity_witness(rho),
        'negativity_trace': MeasureService.negativity_trace(rho),
        'n_minus': MeasureService.count_negative_eigs(rho),
        'gd2': d2,
        'gd1_bounds': dict(bounds),
        'gd1_best': {'label': best_label, 'value': best_bound}
    }


def cmd_measures(args) -> int:
    rho = StateFileService.load_state(args.state, args.repartition)
    print(render(measures_report(rho, _routes(args.routes, rho.m)), Config.DEFAULT_FORMAT))
    return 0
