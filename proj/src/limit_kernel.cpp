namespace tielab {}
