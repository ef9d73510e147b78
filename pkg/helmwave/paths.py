from pathlib import Path


package_folder = Path(__file__).parent
configs_folder = package_folder / "experiments" / "configs"
default_output_folder = Path.cwd() / "helmwave_results"
