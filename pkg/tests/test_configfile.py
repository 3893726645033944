from cyclotomic_bmw import configfile


def test_missing_file_reads_empty(config_path):
    assert not config_path.exists()
    assert configfile.read_config() == {}


def test_round_trip(config_path):
    configfile.write_config({"trials": 50, "format": "tsv"})
    assert config_path.is_file()
    assert configfile.read_config() == {"trials": 50, "format": "tsv"}


def test_corrupt_file_reads_empty(config_path):
    config_path.parent.mkdir(parents=True)
    config_path.write_text("trials = = 3")
    assert configfile.read_config() == {}
